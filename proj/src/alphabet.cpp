#include "isac/alphabet.hpp"

#include <stdexcept>
#include <unordered_set>

namespace isac {

Alphabet::Alphabet(std::string name, std::vector<std::string> symbols)
    : name_(std::move(name)), symbols_(std::move(symbols)) {
  if (name_.empty()) throw std::invalid_argument("alphabet name must be nonempty");
  if (symbols_.empty())
    throw std::invalid_argument("alphabet '" + name_ + "' must have at least one symbol");
  std::unordered_set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw std::invalid_argument("alphabet '" + name_ + "' has an empty symbol");
    if (!seen.insert(s).second)
      throw std::invalid_argument("alphabet '" + name_ + "' repeats symbol '" + s + "'");
  }
}

std::optional<std::size_t> Alphabet::index_of(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == symbol) return i;
  return std::nullopt;
}

Alphabet binary_alphabet(std::string name) {
  return Alphabet(std::move(name), {"0", "1"});
}

}  // namespace isac
