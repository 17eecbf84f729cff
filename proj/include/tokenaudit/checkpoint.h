//
// Copyright 2026 The TokenAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef TOKENAUDIT_CHECKPOINT_H_
#define TOKENAUDIT_CHECKPOINT_H_

#include <cstdint>
#include <string>

#include "tokenaudit/classifier.h"

namespace tokenaudit {

// Binary model files carry the hash of the vocabulary they were trained
// with; loading rejects a checkpoint whose hash does not match the vocab
// the caller is about to pair it with.
void save_hs_checkpoint(const std::string& path, const HsModel& model,
                        std::uint64_t vocab_hash);
void save_sie_checkpoint(const std::string& path, const SieModel& model,
                         std::uint64_t vocab_hash);

HsModel load_hs_checkpoint(const std::string& path,
                           std::uint64_t expected_vocab_hash);
SieModel load_sie_checkpoint(const std::string& path,
                             std::uint64_t expected_vocab_hash);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_CHECKPOINT_H_
