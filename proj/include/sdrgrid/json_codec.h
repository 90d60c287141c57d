// Copyright 2026 The sdrgrid Authors
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

#ifndef SDRGRID_JSON_CODEC_H_
#define SDRGRID_JSON_CODEC_H_

// JSON encodings shared by the stream, grid and plan documents.

#include <string>

#include "json.hpp"
#include "sdrgrid/message.h"

namespace sdrgrid::json_codec {

using Json = nlohmann::json;

Json encode_bound_value(const BoundValue& value);
BoundValue decode_bound_value(const Json& j);

Json encode_temporal(const TemporalExpression& expr);
TemporalExpression decode_temporal(const Json& j);

// Full message record as stored in grid and plan documents.
Json encode_message(const MessageInstance& message);
MessageInstance decode_message(const Json& j);

Timestamp decode_timestamp(const Json& j);

// Field accessors that throw std::invalid_argument naming the field.
const Json& require(const Json& j, const char* field);
std::string require_string(const Json& j, const char* field);

}  // namespace sdrgrid::json_codec

#endif  // SDRGRID_JSON_CODEC_H_
