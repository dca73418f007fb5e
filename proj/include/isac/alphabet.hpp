#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isac {

/// Named finite symbol set. Symbol order is part of the identity: it fixes
/// serialization order and argmin tie-breaking everywhere downstream.
class Alphabet {
public:
  Alphabet(std::string name, std::vector<std::string> symbols);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  std::optional<std::size_t> index_of(std::string_view symbol) const;

  bool operator==(const Alphabet&) const = default;

private:
  std::string name_;
  std::vector<std::string> symbols_;
};

/// Alphabet with symbols {"0", "1"}.
Alphabet binary_alphabet(std::string name);

}  // namespace isac
