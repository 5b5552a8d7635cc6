// Copyright 2026 The cdcgcn Authors
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

#pragma once

#include "config.hpp"

namespace cdcgcn::cli {

void cmd_split(const Config& config);
void cmd_detect(const Config& config);
void cmd_pretrain(const Config& config);
void cmd_train(const Config& config);
void cmd_baseline(const Config& config);
void cmd_eval(const Config& config);
void cmd_debias(const Config& config);
void cmd_export(const Config& config);
void cmd_sweep(const Config& config);
void cmd_generate(const Config& config);

}  // namespace cdcgcn::cli
