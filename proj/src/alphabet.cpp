#include "recmon/alphabet.hpp"

#include <algorithm>
#include <cctype>

namespace recmon {

ConflictingVerdictsError::ConflictingVerdictsError(std::vector<std::string> word)
    : Error([&] {
        std::string w = word.empty() ? "eps" : "";
        for (size_t i = 0; i < word.size(); ++i) {
          if (i) w += '.';
          w += word[i];
        }
        return "conflicting verdicts on word '" + w + "'";
      }()),
      witness(std::move(word)) {}

bool is_action_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

bool is_variable_name(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

Alphabet::Alphabet(std::vector<Action> actions) {
  for (auto& a : actions) {
    if (!is_action_name(a)) throw UnknownActionError(a);
    if (!contains(a)) actions_.push_back(a);
  }
}

Alphabet Alphabet::parse(const std::string& csv) {
  std::vector<Action> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (char c : csv) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  flush();
  return Alphabet(out);
}

bool Alphabet::contains(const Action& a) const {
  return std::find(actions_.begin(), actions_.end(), a) != actions_.end();
}

size_t Alphabet::index_of(const Action& a) const {
  auto it = std::find(actions_.begin(), actions_.end(), a);
  if (it == actions_.end()) throw UnknownActionError(a);
  return static_cast<size_t>(it - actions_.begin());
}

std::string Alphabet::to_string() const {
  std::string out;
  for (size_t i = 0; i < actions_.size(); ++i) {
    if (i) out += ',';
    out += actions_[i];
  }
  return out;
}

}  // namespace recmon
