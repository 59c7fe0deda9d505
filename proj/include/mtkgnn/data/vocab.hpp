// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtkgnn {

enum class VocabKind { entity, relation, attribute };

const char* to_string(VocabKind kind);

// Name <-> dense id map. Ids are assigned 0..size-1 in insertion order.
class Vocab {
 public:
  explicit Vocab(VocabKind kind = VocabKind::entity) : kind_(kind) {}

  VocabKind kind() const { return kind_; }
  std::size_t size() const { return names_.size(); }

  // Returns the existing id, or appends the name.
  std::size_t intern(std::string_view name);
  std::optional<std::size_t> find(std::string_view name) const;
  // Throws DataError when the name is unknown.
  std::size_t id(std::string_view name) const;
  const std::string& name(std::size_t id) const;
  const std::vector<std::string>& names() const { return names_; }

  // Order-sensitive fingerprint used to match checkpoints to datasets.
  std::uint64_t fingerprint() const;

  bool operator==(const Vocab& other) const {
    return kind_ == other.kind_ && names_ == other.names_;
  }

 private:
  VocabKind kind_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace mtkgnn
