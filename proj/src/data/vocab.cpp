// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/data/vocab.hpp"

#include "mtkgnn/errors.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn {

const char* to_string(VocabKind kind) {
  switch (kind) {
    case VocabKind::entity: return "entity";
    case VocabKind::relation: return "relation";
    case VocabKind::attribute: return "attribute";
  }
  return "?";
}

std::size_t Vocab::intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  const std::size_t id = names_.size();
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<std::size_t> Vocab::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocab::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw DataError(std::string("unknown ") + to_string(kind_) + " '" +
                  std::string(name) + "'");
}

const std::string& Vocab::name(std::size_t id) const {
  if (id >= names_.size()) {
    throw std::out_of_range(std::string(to_string(kind_)) + " id " +
                            std::to_string(id) + " out of range");
  }
  return names_[id];
}

std::uint64_t Vocab::fingerprint() const {
  std::uint64_t h = fnv1a64(to_string(kind_));
  for (const auto& n : names_) {
    h = fnv1a64(n, h);
    h = fnv1a64(std::string_view("\n", 1), h);
  }
  return h;
}

}  // namespace mtkgnn
