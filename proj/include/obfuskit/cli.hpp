// Copyright 2026 The Obfuskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OBFUSKIT_CLI_HPP
#define OBFUSKIT_CLI_HPP

#include <string>
#include <vector>

namespace obfuskit {

/// Entry point behind main(). Exit codes: 0 success, 2 validation error
/// (bad flags, bad config values), 1 runtime error (missing files, pipeline
/// failures).
int run_cli(const std::vector<std::string>& args);

}  // namespace obfuskit

#endif  // OBFUSKIT_CLI_HPP
