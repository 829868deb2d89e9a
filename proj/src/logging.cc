// Copyright (c) 2026 The laughcorpus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "laughcorpus/logging.h"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>

namespace laughcorpus {

void InitLogging() {
  auto logger = spdlog::stderr_color_mt("laughcorpus");
  logger->set_pattern("[%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("LAUGHCORPUS_LOG")) {
    const std::string value(env);
    if (value == "off") level = spdlog::level::off;
    else if (value == "error") level = spdlog::level::err;
    else if (value == "warn") level = spdlog::level::warn;
    else if (value == "info") level = spdlog::level::info;
    else if (value == "debug") level = spdlog::level::debug;
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

}  // namespace laughcorpus
