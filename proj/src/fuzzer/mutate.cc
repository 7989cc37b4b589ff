// Copyright 2026 The Reachbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reachbench/fuzzer/mutate.h"

#include "reachbench/util/error.h"

namespace reachbench::fuzzer {
namespace {

void check_rate(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(std::string("mutation ") + name + " must lie in [0, 1]");
  }
}

std::uint8_t draw_byte(const MutationPolicy& policy, Rng& rng,
                       std::span<const std::uint8_t> dictionary) {
  if (!dictionary.empty() && rng.bernoulli(policy.dictionary_probability)) {
    return dictionary[rng.index(dictionary.size())];
  }
  return static_cast<std::uint8_t>(rng.uniform_int(0, 255));
}

}  // namespace

void MutationPolicy::validate() const {
  check_rate(flip_rate, "flip_rate");
  check_rate(insert_rate, "insert_rate");
  check_rate(delete_rate, "delete_rate");
  check_rate(splice_rate, "splice_rate");
  check_rate(dictionary_probability, "dictionary_probability");
  if (max_stack < 1) throw ConfigError("mutation max_stack must be >= 1");
  if (max_length < 1) throw ConfigError("mutation max_length must be >= 1");
}

std::string mutate_input(std::string_view input, const MutationPolicy& policy,
                         Rng& rng, std::span<const std::string> corpus,
                         std::span<const std::uint8_t> dictionary,
                         MutationOps* ops) {
  std::string out(input);
  const auto rounds = rng.uniform_int(1, policy.max_stack);
  MutationOps local;
  for (std::int64_t round = 0; round < rounds; ++round) {
    ++local.rounds;
    if (rng.bernoulli(policy.flip_rate)) {
      ++local.flips;
      if (!out.empty()) {
        out[rng.index(out.size())] =
            static_cast<char>(draw_byte(policy, rng, dictionary));
      }
    }
    if (rng.bernoulli(policy.insert_rate)) {
      ++local.inserts;
      const std::size_t pos = rng.index(out.size() + 1);
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos),
                 static_cast<char>(draw_byte(policy, rng, dictionary)));
    }
    if (rng.bernoulli(policy.delete_rate)) {
      ++local.deletes;
      if (!out.empty()) {
        out.erase(rng.index(out.size()), 1);
      }
    }
    if (rng.bernoulli(policy.splice_rate)) {
      ++local.splices;
      if (!corpus.empty()) {
        const std::string& other = corpus[rng.index(corpus.size())];
        const std::size_t cut = rng.index(out.size() + 1);
        const std::size_t from = rng.index(other.size() + 1);
        out.resize(cut);
        out.append(other, from);
      }
    }
    if (out.size() > policy.max_length) out.resize(policy.max_length);
  }
  if (ops != nullptr) {
    ops->rounds += local.rounds;
    ops->flips += local.flips;
    ops->inserts += local.inserts;
    ops->deletes += local.deletes;
    ops->splices += local.splices;
  }
  return out;
}

Json to_json(const MutationPolicy& p) {
  Json j;
  j["flip_rate"] = p.flip_rate;
  j["insert_rate"] = p.insert_rate;
  j["delete_rate"] = p.delete_rate;
  j["splice_rate"] = p.splice_rate;
  j["max_stack"] = p.max_stack;
  j["max_length"] = p.max_length;
  j["dictionary_probability"] = p.dictionary_probability;
  return j;
}

MutationPolicy mutation_policy_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("mutation policy must be an object");
  MutationPolicy p;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "flip_rate") {
        p.flip_rate = value.get<double>();
      } else if (key == "insert_rate") {
        p.insert_rate = value.get<double>();
      } else if (key == "delete_rate") {
        p.delete_rate = value.get<double>();
      } else if (key == "splice_rate") {
        p.splice_rate = value.get<double>();
      } else if (key == "max_stack") {
        p.max_stack = value.get<int>();
      } else if (key == "max_length") {
        p.max_length = value.get<std::size_t>();
      } else if (key == "dictionary_probability") {
        p.dictionary_probability = value.get<double>();
      } else {
        throw ConfigError("unknown mutation policy key '" + key + "'");
      }
    } catch (const Json::exception& e) {
      throw ConfigError("mutation policy key '" + key + "': " + e.what());
    }
  }
  p.validate();
  return p;
}

}  // namespace reachbench::fuzzer
