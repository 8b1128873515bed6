/*
   Copyright 2026 The fuzzylb Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */
#pragma once

#include <string_view>

namespace fuzzylb {

/// Load-balancing role of a node as decided by the transfer policy.
enum class NodeStatus { Sender, Receiver, Neutral };

constexpr std::string_view to_string(NodeStatus s) {
    switch (s) {
        case NodeStatus::Sender: return "Sender";
        case NodeStatus::Receiver: return "Receiver";
        case NodeStatus::Neutral: return "Neutral";
    }
    return "?";
}

}  // namespace fuzzylb
