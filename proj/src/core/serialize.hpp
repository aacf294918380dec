/*
 * Copyright 2026 The defalg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <string>

#include <json.hpp>

namespace defalg {

/// Pretty JSON with alphabetical keys, 17 significant digits for floats and
/// null for non-finite values. Byte-stable for equal input.
std::string to_json_text(const nlohmann::json& doc);

/// CSV of the report's tabular rows: `index,computed,reference,deviation`,
/// with a leading `j` column when rows carry one and a leading `point`
/// column when the report holds more than one sweep point.
std::string to_csv_text(const nlohmann::json& report);

/// %.17g, or an empty string for a non-finite value.
std::string format_double(double v);

} // namespace defalg
