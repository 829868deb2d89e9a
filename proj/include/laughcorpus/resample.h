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

#ifndef LAUGHCORPUS_RESAMPLE_H_
#define LAUGHCORPUS_RESAMPLE_H_

#include <span>
#include <vector>

namespace laughcorpus {

// Rational-ratio polyphase resampler with a Kaiser-windowed sinc lowpass.
// The cutoff sits at 0.95 of the lower Nyquist frequency; each output
// sample spans `zero_crossings` sinc lobes on either side. Output length is
// ceil(len * out_rate / in_rate). Equal rates return the input unchanged.
std::vector<float> Resample(std::span<const float> input, int in_rate,
                            int out_rate, int zero_crossings = 16,
                            double kaiser_beta = 8.6);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_RESAMPLE_H_
