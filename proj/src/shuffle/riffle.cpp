#include "mixscope/shuffle/riffle.hpp"

#include <algorithm>
#include <numeric>

#include "mixscope/error.hpp"

namespace mixscope::shuffle {

StringAssignment::StringAssignment(int cards, int bits) : bits_(bits), keys_(static_cast<std::size_t>(cards), 0) {
  if (bits < 0 || bits > 63) throw InvalidArgument("string assignment: string length must be in 0..63");
}

StringAssignment StringAssignment::from_keys(int bits, std::vector<std::uint64_t> keys) {
  StringAssignment a(static_cast<int>(keys.size()), bits);
  const std::uint64_t limit = bits == 0 ? 1 : (std::uint64_t{1} << bits);
  for (auto k : keys) {
    if (k >= limit) throw InvalidArgument("string assignment: key wider than the string length");
  }
  a.keys_ = std::move(keys);
  return a;
}

StringAssignment StringAssignment::from_strings(const std::vector<std::string>& strings) {
  if (strings.empty()) throw InvalidArgument("string assignment: no cards");
  const auto bits = static_cast<int>(strings.front().size());
  std::vector<std::uint64_t> keys;
  for (const auto& s : strings) {
    if (static_cast<int>(s.size()) != bits) throw InvalidArgument("string assignment: strings differ in length");
    std::uint64_t k = 0;
    for (int j = 0; j < bits; ++j) {
      const char ch = s[static_cast<std::size_t>(j)];
      if (ch != '0' && ch != '1') throw InvalidArgument("string assignment: strings must be binary");
      if (ch == '1') k |= std::uint64_t{1} << j;
    }
    keys.push_back(k);
  }
  return from_keys(bits, std::move(keys));
}

StringAssignment StringAssignment::prefix(int steps) const {
  if (steps < 0 || steps > bits_) throw InvalidArgument("string assignment: prefix longer than strings");
  const std::uint64_t mask = steps == 0 ? 0 : (~std::uint64_t{0} >> (64 - steps));
  std::vector<std::uint64_t> k(keys_);
  for (auto& x : k) x &= mask;
  return from_keys(steps, std::move(k));
}

StringAssignment StringAssignment::step_slice(int step) const {
  if (step < 0 || step >= bits_) throw InvalidArgument("string assignment: step out of range");
  std::vector<std::uint64_t> k(keys_);
  for (auto& x : k) x = (x >> step) & 1u;
  return from_keys(1, std::move(k));
}

Deck inverse_riffle_apply(const Deck& d, const StringAssignment& a) {
  if (a.cards() != d.size()) throw InvalidArgument("inverse_riffle_apply: assignment does not match deck size");
  std::vector<Card> order(d.order().begin(), d.order().end());
  std::stable_sort(order.begin(), order.end(), [&](Card x, Card y) { return a.key(x) < a.key(y); });
  return Deck::from_order(std::move(order));
}

std::vector<RiffleOutcome> enumerate_riffle(int n, int bits, std::uint64_t budget) {
  if (n < 2) throw InvalidArgument("enumerate_riffle: need at least two cards");
  if (bits < 0) throw InvalidArgument("enumerate_riffle: negative string length");
  const long total_bits = static_cast<long>(n) * bits;
  if (total_bits >= 63 || (std::uint64_t{1} << total_bits) > budget) {
    throw CapacityError("enumerate_riffle: 2^" + std::to_string(total_bits) +
                        " assignments exceed the enumeration budget; use sampling instead");
  }
  const std::uint64_t count = std::uint64_t{1} << total_bits;
  const std::uint64_t mask = bits == 0 ? 0 : (~std::uint64_t{0} >> (64 - bits));
  const Rational weight = make_rational(BigInt(1), pow_int(2, static_cast<std::uint64_t>(total_bits)));
  const Deck start = Deck::identity(n);
  std::vector<RiffleOutcome> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) keys[static_cast<std::size_t>(c)] = (code >> (c * bits)) & mask;
    auto a = StringAssignment::from_keys(bits, std::move(keys));
    Deck deck = inverse_riffle_apply(start, a);
    out.push_back({std::move(a), std::move(deck), weight});
  }
  return out;
}

}  // namespace mixscope::shuffle
