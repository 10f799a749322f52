#include "nilm/surface.hpp"

#include "nilm/error.hpp"

namespace nilm::surface {

std::string spaced(std::string_view chars) {
  std::string out;
  out.reserve(chars.size() * 2);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (i != 0) out.push_back(' ');
    out.push_back(chars[i]);
  }
  return out;
}

std::string unspaced(std::string_view rendered) {
  if (rendered.empty()) throw ParseError("empty symbol string");
  if (rendered.size() % 2 == 0) throw ParseError("expected single characters separated by spaces");
  std::string out;
  out.reserve(rendered.size() / 2 + 1);
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    const char c = rendered[i];
    if (i % 2 == 1) {
      if (c != ' ') throw ParseError("expected single characters separated by spaces");
    } else {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        throw ParseError("unexpected whitespace in symbol string");
      out.push_back(c);
    }
  }
  return out;
}

std::optional<std::pair<std::string_view, std::string_view>> split_pair(std::string_view s) {
  const auto pos = s.find(kPairSeparator);
  if (pos == std::string_view::npos) return std::nullopt;
  if (s.find(kPairSeparator, pos + 1) != std::string_view::npos) return std::nullopt;
  return std::pair{s.substr(0, pos), s.substr(pos + kPairSeparator.size())};
}

}  // namespace nilm::surface
