#include "mixscope/cycle/coloring.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "mixscope/error.hpp"

namespace mixscope::cycle {

Coloring::Coloring(std::vector<Color> marks) : marks_(std::move(marks)) {
  if (marks_.size() < 2 || marks_.size() % 2 != 0) {
    throw InvalidArgument("coloring: need an even number (>= 2) of vertices");
  }
  const auto reds = std::count(marks_.begin(), marks_.end(), Color::red);
  if (static_cast<std::size_t>(reds) * 2 != marks_.size()) {
    throw InvalidArgument("coloring: unbalanced, " + std::to_string(reds) + " red of " +
                          std::to_string(marks_.size()));
  }
}

Coloring Coloring::parse(std::string_view text) {
  std::vector<Color> marks;
  for (char ch : text) {
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up == 'R') {
      marks.push_back(Color::red);
    } else if (up == 'B') {
      marks.push_back(Color::blue);
    } else if (up != ' ' && up != '.') {
      throw InvalidArgument(std::string("coloring: unexpected character '") + ch + "'");
    }
  }
  return Coloring(std::move(marks));
}

Coloring Coloring::from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  if (!j.is_array()) throw InvalidArgument("coloring json: expected a string or an array");
  std::string text;
  for (const auto& e : j) {
    if (!e.is_string()) throw InvalidArgument("coloring json: entries must be \"R\" or \"B\"");
    const auto s = e.get<std::string>();
    if (s != "R" && s != "B" && s != "r" && s != "b") throw InvalidArgument("coloring json: bad entry '" + s + "'");
    text += s;
  }
  return parse(text);
}

int Coloring::cyclic_distance(int a, int b) const {
  const int d = std::abs(wrap(a) - wrap(b));
  return std::min(d, size() - d);
}

std::string Coloring::to_string() const {
  std::string s;
  for (Color c : marks_) s += c == Color::red ? 'R' : 'B';
  return s;
}

std::vector<Coloring> all_colorings(int size) {
  if (size < 2 || size % 2 != 0 || size > 30) throw InvalidArgument("all_colorings: size must be even, 2..30");
  std::vector<Color> marks(static_cast<std::size_t>(size), Color::blue);
  std::fill(marks.begin(), marks.begin() + size / 2, Color::red);
  // red < blue, so lexicographic next_permutation enumerates every arrangement once.
  std::vector<Coloring> out;
  do {
    out.emplace_back(marks);
  } while (std::next_permutation(marks.begin(), marks.end()));
  return out;
}

Coloring random_coloring(int size, std::mt19937_64& rng) {
  if (size < 2 || size % 2 != 0) throw InvalidArgument("random_coloring: size must be even");
  std::vector<Color> marks(static_cast<std::size_t>(size), Color::blue);
  std::fill(marks.begin(), marks.begin() + size / 2, Color::red);
  std::shuffle(marks.begin(), marks.end(), rng);
  return Coloring(std::move(marks));
}

}  // namespace mixscope::cycle
