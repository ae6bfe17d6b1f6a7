#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mixscope::cycle {

enum class Color : std::uint8_t { red, blue };

/// A balanced red/blue colouring of the cycle on 2n vertices 0..2n-1.
class Coloring {
 public:
  explicit Coloring(std::vector<Color> marks);

  /// "RRBRBB"; case-insensitive, spaces and '.' ignored.
  static Coloring parse(std::string_view text);
  /// Either a string as for parse() or an array of "R"/"B" entries.
  static Coloring from_json(const nlohmann::json& j);

  int size() const { return static_cast<int>(marks_.size()); }
  int half() const { return size() / 2; }
  Color at(int v) const { return marks_[static_cast<std::size_t>(wrap(v))]; }
  bool is_red(int v) const { return at(v) == Color::red; }
  int wrap(int v) const {
    const int m = size();
    return ((v % m) + m) % m;
  }
  /// Shortest distance between two vertices along the cycle.
  int cyclic_distance(int a, int b) const;

  std::string to_string() const;
  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<Color> marks_;
};

/// Every balanced colouring of a cycle with `size` vertices.
std::vector<Coloring> all_colorings(int size);
Coloring random_coloring(int size, std::mt19937_64& rng);

}  // namespace mixscope::cycle
