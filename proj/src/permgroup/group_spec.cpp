#include "boxprod/group_spec.hpp"

#include <cctype>

#include "boxprod/errors.hpp"

namespace boxprod {

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  PermGroup parse() {
    skip_space();
    std::size_t degree_pos = pos_;
    std::size_t degree = number();
    if (degree == 0) throw ParseError("degree must be positive", degree_pos);
    std::vector<Perm> gens;
    skip_space();
    while (pos_ < text_.size()) {
      expect(';');
      skip_space();
      if (pos_ == text_.size() || peek() == ';') {
        gens.push_back(Perm::identity(degree));
        continue;
      }
      gens.push_back(generator(degree));
      skip_space();
    }
    return PermGroup(degree, std::move(gens));
  }

 private:
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || peek() != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::size_t number() {
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::size_t>(peek() - '0');
      if (value > 1'000'000'000) throw ParseError("number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", start);
    return value;
  }

  Perm generator(std::size_t degree) {
    std::vector<std::vector<Point>> cycles;
    std::vector<bool> used(degree, false);
    while (pos_ < text_.size() && peek() == '(') {
      ++pos_;
      std::vector<Point> cycle;
      skip_space();
      while (pos_ < text_.size() && peek() != ')') {
        std::size_t at = pos_;
        std::size_t point = number();
        if (point < 1 || point > degree)
          throw ParseError("point " + std::to_string(point) + " out of range 1.." +
                               std::to_string(degree),
                           at);
        if (used[point - 1])
          throw ParseError("point " + std::to_string(point) + " repeated", at);
        used[point - 1] = true;
        cycle.push_back(static_cast<Point>(point - 1));
        skip_space();
        if (pos_ < text_.size() && peek() == ',') {
          ++pos_;
          skip_space();
        }
      }
      expect(')');
      if (!cycle.empty()) cycles.push_back(std::move(cycle));
      skip_space();
    }
    if (pos_ < text_.size() && peek() != ';')
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    return Perm::from_cycles(degree, cycles);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PermGroup parse_group_spec(std::string_view text) { return SpecParser(text).parse(); }

std::string to_group_spec(const PermGroup& G) {
  std::string out = std::to_string(G.degree());
  for (const Perm& g : G.generators()) out += "; " + to_cycle_string(g);
  return out;
}

PermGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("degree") || !j["degree"].is_number_unsigned())
    throw ParseError("group JSON needs an unsigned \"degree\"", 0);
  std::size_t degree = j["degree"].get<std::size_t>();
  if (degree == 0) throw ParseError("degree must be positive", 0);
  std::vector<Perm> gens;
  if (j.contains("generators")) {
    const auto& list = j["generators"];
    if (!list.is_array()) throw ParseError("\"generators\" must be an array", 0);
    for (std::size_t gi = 0; gi < list.size(); ++gi) {
      std::vector<std::vector<Point>> cycles;
      std::vector<bool> used(degree, false);
      if (!list[gi].is_array()) throw ParseError("generator must be a list of cycles", gi);
      for (const auto& cyc : list[gi]) {
        if (!cyc.is_array()) throw ParseError("cycle must be an array", gi);
        std::vector<Point> cycle;
        for (const auto& p : cyc) {
          if (!p.is_number_unsigned()) throw ParseError("cycle entries must be points", gi);
          std::size_t point = p.get<std::size_t>();
          if (point < 1 || point > degree)
            throw ParseError("point " + std::to_string(point) + " out of range", gi);
          if (used[point - 1])
            throw ParseError("point " + std::to_string(point) + " repeated", gi);
          used[point - 1] = true;
          cycle.push_back(static_cast<Point>(point - 1));
        }
        if (!cycle.empty()) cycles.push_back(std::move(cycle));
      }
      gens.push_back(Perm::from_cycles(degree, cycles));
    }
  }
  return PermGroup(degree, std::move(gens));
}

nlohmann::json group_to_json(const PermGroup& G) {
  nlohmann::json gens = nlohmann::json::array();
  for (const Perm& g : G.generators()) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& cycle : g.cycles()) {
      nlohmann::json c = nlohmann::json::array();
      for (Point x : cycle) c.push_back(x + 1);
      cycles.push_back(std::move(c));
    }
    gens.push_back(std::move(cycles));
  }
  return {{"degree", G.degree()}, {"generators", std::move(gens)}};
}

PermGroup parse_group_any(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    return group_from_json(j);
  }
  return parse_group_spec(text);
}

}  // namespace boxprod
