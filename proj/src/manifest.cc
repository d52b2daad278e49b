// Copyright 2026 The gecsynth Authors
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

#include "gecsynth/manifest.h"

#include <fstream>

#include "gecsynth/error.h"
#include "gecsynth/version.h"

namespace gecsynth {

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["tool"] = std::string(kToolName);
  j["version"] = std::string(kVersion);
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  if (seed) j["seed"] = *seed;
  j["wall_time_seconds"] = wall_time_seconds;
  j["stats"] = stats;
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open manifest for writing: " + path.string());
  out << to_json().dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("failed writing manifest: " + path.string());
}

}  // namespace gecsynth
