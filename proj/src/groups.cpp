#include "rwg/groups.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace rwg {

namespace mp = boost::multiprecision;

namespace {

constexpr std::string_view kLatticeSymbols = "xyzwvutsrqponmlkjihgfedcba";
constexpr std::string_view kFreeSymbols = "abcdefghijklmnopqrstuvwxyz";

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw GroupError("integer overflow in group law");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw GroupError("integer overflow in group law");
  return r;
}

std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw GroupError("integer overflow in group law");
  return -a;
}

// Dyadic rational arithmetic on (numerator, exponent) pairs.
void normalize_dyadic(mp::cpp_int& num, std::int64_t& exp) {
  if (num == 0) {
    exp = 0;
    return;
  }
  const auto shift = static_cast<std::int64_t>(mp::lsb(mp::cpp_int(mp::abs(num))));
  if (shift > 0) {
    num >>= static_cast<unsigned>(shift);
    exp = checked_add(exp, shift);
  }
}

void add_dyadic(mp::cpp_int& num, std::int64_t& exp, const mp::cpp_int& num2, std::int64_t exp2) {
  if (num2 == 0) return;
  if (num == 0) {
    num = num2;
    exp = exp2;
    return;
  }
  if (exp <= exp2) {
    num += num2 << static_cast<unsigned>(exp2 - exp);
  } else {
    num = (num << static_cast<unsigned>(exp - exp2)) + num2;
    exp = exp2;
  }
  normalize_dyadic(num, exp);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over a running combination.
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xff));
}

void put_i64(std::string& out, std::int64_t v) {
  const auto u = static_cast<std::uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<char>((u >> shift) & 0xff));
}

class KeyReader {
public:
  explicit KeyReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<std::uint8_t>(bytes_[pos_++]);
    return v;
  }
  std::int64_t i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<std::uint8_t>(bytes_[pos_++]);
    return static_cast<std::int64_t>(v);
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == bytes_.size(); }

private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw GroupError("truncated canonical key");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::lattice: return "lattice";
    case Family::free: return "free";
    case Family::heisenberg: return "heisenberg";
    case Family::lamplighter: return "lamplighter";
    case Family::bs12: return "bs12";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (auto f : {Family::lattice, Family::free, Family::heisenberg, Family::lamplighter, Family::bs12})
    if (family_name(f) == name) return f;
  throw GroupError("unknown group family '" + std::string(name) + "'");
}

std::strong_ordering operator<=>(const DyadicElement& a, const DyadicElement& b) {
  if (auto c = a.m <=> b.m; c != 0) return c;
  if (auto c = a.exponent <=> b.exponent; c != 0) return c;
  if (a.numerator < b.numerator) return std::strong_ordering::less;
  if (b.numerator < a.numerator) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Family family_of(const GroupElement& g) {
  return static_cast<Family>(g.index());
}

std::string canonical_key(const GroupElement& g) {
  std::string out;
  std::visit(
      [&out](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, LatticeElement>) {
          put_u8(out, 'L');
          put_u32(out, static_cast<std::uint32_t>(e.coords.size()));
          for (auto c : e.coords) put_i64(out, c);
        } else if constexpr (std::is_same_v<T, FreeElement>) {
          put_u8(out, 'F');
          put_u32(out, static_cast<std::uint32_t>(e.letters.size()));
          for (auto l : e.letters) put_u8(out, static_cast<std::uint8_t>(l));
        } else if constexpr (std::is_same_v<T, HeisenbergElement>) {
          put_u8(out, 'H');
          put_i64(out, e.x);
          put_i64(out, e.y);
          put_i64(out, e.z);
        } else if constexpr (std::is_same_v<T, LamplighterElement>) {
          put_u8(out, 'P');
          put_i64(out, e.cursor);
          put_u32(out, static_cast<std::uint32_t>(e.lamps.size()));
          for (auto l : e.lamps) put_i64(out, l);
        } else {
          put_u8(out, 'B');
          put_i64(out, e.m);
          put_i64(out, e.exponent);
          const int sign = e.numerator.sign();
          put_u8(out, sign == 0 ? 0 : (sign > 0 ? 1 : 2));
          std::vector<std::uint8_t> mag;
          mp::export_bits(mp::cpp_int(mp::abs(e.numerator)), std::back_inserter(mag), 8, true);
          if (sign == 0) mag.clear();
          put_u32(out, static_cast<std::uint32_t>(mag.size()));
          for (auto b : mag) put_u8(out, b);
        }
      },
      g);
  return out;
}

std::string to_hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw GroupError("odd-length hex key");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw GroupError("invalid hex digit in key");
  };
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  return out;
}

std::string to_string(const GroupElement& g) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        auto join = [](const auto& range) {
          std::string s;
          for (auto v : range) {
            if (!s.empty()) s += ',';
            s += std::to_string(v);
          }
          return s;
        };
        if constexpr (std::is_same_v<T, LatticeElement>) {
          return "(" + join(e.coords) + ")";
        } else if constexpr (std::is_same_v<T, FreeElement>) {
          if (e.letters.empty()) return "e";
          std::string s;
          for (auto l : e.letters) {
            if (!s.empty()) s += ' ';
            s += kFreeSymbols[static_cast<std::size_t>(std::abs(l) - 1)];
            if (l < 0) s += '-';
          }
          return s;
        } else if constexpr (std::is_same_v<T, HeisenbergElement>) {
          return "(" + std::to_string(e.x) + "," + std::to_string(e.y) + "," + std::to_string(e.z) + ")";
        } else if constexpr (std::is_same_v<T, LamplighterElement>) {
          return "({" + join(e.lamps) + "}," + std::to_string(e.cursor) + ")";
        } else {
          return "(" + e.numerator.str() + "*2^" + std::to_string(e.exponent) + "," + std::to_string(e.m) + ")";
        }
      },
      g);
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = g.index();
  std::visit(
      [&h](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, LatticeElement>) {
          for (auto c : e.coords) h = mix(h, static_cast<std::uint64_t>(c));
        } else if constexpr (std::is_same_v<T, FreeElement>) {
          h = mix(h, e.letters.size());
          std::uint64_t acc = 0;
          int filled = 0;
          for (auto l : e.letters) {
            acc = (acc << 8) | static_cast<std::uint8_t>(l);
            if (++filled == 8) {
              h = mix(h, acc);
              acc = 0;
              filled = 0;
            }
          }
          if (filled) h = mix(h, acc);
        } else if constexpr (std::is_same_v<T, HeisenbergElement>) {
          h = mix(mix(mix(h, static_cast<std::uint64_t>(e.x)), static_cast<std::uint64_t>(e.y)),
                  static_cast<std::uint64_t>(e.z));
        } else if constexpr (std::is_same_v<T, LamplighterElement>) {
          h = mix(h, static_cast<std::uint64_t>(e.cursor));
          for (auto l : e.lamps) h = mix(h, static_cast<std::uint64_t>(l));
        } else {
          h = mix(mix(h, static_cast<std::uint64_t>(e.m)), static_cast<std::uint64_t>(e.exponent));
          h = mix(h, static_cast<std::uint64_t>(mp::hash_value(e.numerator)));
        }
      },
      g);
  return static_cast<std::size_t>(h);
}

std::string to_string(const GroupDescriptor& d) {
  switch (d.family) {
    case Family::lattice: return "lattice(" + std::to_string(d.param) + ")";
    case Family::free: return "free(" + std::to_string(d.param) + ")";
    default: return std::string(family_name(d.family));
  }
}

Group::Group(GroupDescriptor desc) : desc_(desc) {
  switch (desc_.family) {
    case Family::lattice:
      if (desc_.param < 1 || desc_.param > static_cast<int>(kLatticeSymbols.size()))
        throw GroupError("lattice rank k must be in [1, 26]");
      symbols_ = std::string(kLatticeSymbols.substr(0, static_cast<std::size_t>(desc_.param)));
      break;
    case Family::free:
      if (desc_.param < 2 || desc_.param > static_cast<int>(kFreeSymbols.size()))
        throw GroupError("free rank r must be in [2, 26]");
      symbols_ = std::string(kFreeSymbols.substr(0, static_cast<std::size_t>(desc_.param)));
      break;
    case Family::heisenberg:
    case Family::bs12:
      desc_.param = 0;
      symbols_ = "ab";
      break;
    case Family::lamplighter:
      desc_.param = 0;
      symbols_ = "st";
      break;
  }
}

int Group::abelian_rank() const noexcept {
  switch (desc_.family) {
    case Family::lattice:
    case Family::free: return desc_.param;
    case Family::heisenberg: return 2;
    case Family::lamplighter:
    case Family::bs12: return 1;
  }
  return 0;
}

bool Group::is_involution(char symbol) const noexcept {
  return desc_.family == Family::lamplighter && symbol == 's';
}

std::vector<GroupElement> Group::generators() const {
  std::vector<GroupElement> out;
  for (char c : symbols_) out.push_back(generator({c, false}));
  return out;
}

std::vector<GroupElement> Group::generators_and_inverses() const {
  std::vector<GroupElement> out = generators();
  for (char c : symbols_)
    if (!is_involution(c)) out.push_back(generator({c, true}));
  return out;
}

GroupElement Group::identity() const {
  switch (desc_.family) {
    case Family::lattice: {
      LatticeElement e;
      e.coords.assign(static_cast<std::size_t>(desc_.param), 0);
      return e;
    }
    case Family::free: return FreeElement{};
    case Family::heisenberg: return HeisenbergElement{};
    case Family::lamplighter: return LamplighterElement{};
    case Family::bs12: return DyadicElement{};
  }
  throw GroupError("unreachable");
}

void Group::require_member(const GroupElement& a) const {
  if (!contains(a)) throw GroupError("element does not belong to " + to_string(desc_));
}

bool Group::contains(const GroupElement& a) const {
  if (family_of(a) != desc_.family) return false;
  if (const auto* l = std::get_if<LatticeElement>(&a))
    return l->coords.size() == static_cast<std::size_t>(desc_.param);
  if (const auto* f = std::get_if<FreeElement>(&a))
    return std::all_of(f->letters.begin(), f->letters.end(),
                       [this](std::int8_t l) { return l != 0 && std::abs(l) <= desc_.param; });
  return true;
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  if (a.index() != b.index() || family_of(a) != desc_.family)
    throw GroupError("descriptor mismatch in multiply");
  switch (desc_.family) {
    case Family::lattice: {
      const auto& x = std::get<LatticeElement>(a);
      const auto& y = std::get<LatticeElement>(b);
      if (x.coords.size() != y.coords.size()) throw GroupError("descriptor mismatch in multiply");
      LatticeElement r;
      r.coords.resize(x.coords.size());
      for (std::size_t i = 0; i < x.coords.size(); ++i) r.coords[i] = checked_add(x.coords[i], y.coords[i]);
      return r;
    }
    case Family::free: {
      const auto& x = std::get<FreeElement>(a).letters;
      const auto& y = std::get<FreeElement>(b).letters;
      std::size_t cancel = 0;
      while (cancel < x.size() && cancel < y.size() && x[x.size() - 1 - cancel] == -y[cancel]) ++cancel;
      FreeElement r;
      r.letters.reserve(x.size() + y.size() - 2 * cancel);
      r.letters.insert(r.letters.end(), x.begin(), x.end() - static_cast<std::ptrdiff_t>(cancel));
      r.letters.insert(r.letters.end(), y.begin() + static_cast<std::ptrdiff_t>(cancel), y.end());
      return r;
    }
    case Family::heisenberg: {
      const auto& x = std::get<HeisenbergElement>(a);
      const auto& y = std::get<HeisenbergElement>(b);
      return HeisenbergElement{checked_add(x.x, y.x), checked_add(x.y, y.y),
                               checked_add(checked_add(x.z, y.z), checked_mul(x.x, y.y))};
    }
    case Family::lamplighter: {
      const auto& x = std::get<LamplighterElement>(a);
      const auto& y = std::get<LamplighterElement>(b);
      // (S,t)(S',t') = (S xor (S'+t), t+t')
      LamplighterElement r;
      r.cursor = checked_add(x.cursor, y.cursor);
      auto i = x.lamps.begin();
      auto j = y.lamps.begin();
      while (i != x.lamps.end() || j != y.lamps.end()) {
        if (j == y.lamps.end()) {
          r.lamps.push_back(*i++);
          continue;
        }
        const std::int64_t shifted = checked_add(*j, x.cursor);
        if (i == x.lamps.end() || shifted < *i) {
          r.lamps.push_back(shifted);
          ++j;
        } else if (*i < shifted) {
          r.lamps.push_back(*i++);
        } else {
          ++i;
          ++j;
        }
      }
      return r;
    }
    case Family::bs12: {
      const auto& x = std::get<DyadicElement>(a);
      const auto& y = std::get<DyadicElement>(b);
      DyadicElement r{x.numerator, x.exponent, checked_add(x.m, y.m)};
      add_dyadic(r.numerator, r.exponent, y.numerator, y.numerator == 0 ? 0 : checked_add(y.exponent, x.m));
      return r;
    }
  }
  throw GroupError("unreachable");
}

GroupElement Group::inverse(const GroupElement& a) const {
  require_member(a);
  switch (desc_.family) {
    case Family::lattice: {
      LatticeElement r = std::get<LatticeElement>(a);
      for (auto& c : r.coords) c = checked_neg(c);
      return r;
    }
    case Family::free: {
      const auto& x = std::get<FreeElement>(a).letters;
      FreeElement r;
      r.letters.reserve(x.size());
      for (auto it = x.rbegin(); it != x.rend(); ++it) r.letters.push_back(static_cast<std::int8_t>(-*it));
      return r;
    }
    case Family::heisenberg: {
      const auto& x = std::get<HeisenbergElement>(a);
      return HeisenbergElement{checked_neg(x.x), checked_neg(x.y), checked_add(checked_mul(x.x, x.y), checked_neg(x.z))};
    }
    case Family::lamplighter: {
      // (S,t)^-1 = (S - t, -t)
      const auto& x = std::get<LamplighterElement>(a);
      LamplighterElement r;
      r.cursor = checked_neg(x.cursor);
      for (auto l : x.lamps) r.lamps.push_back(checked_add(l, r.cursor));
      return r;
    }
    case Family::bs12: {
      // (q,m)^-1 = (-2^-m q, -m)
      const auto& x = std::get<DyadicElement>(a);
      DyadicElement r{-x.numerator, x.numerator == 0 ? 0 : checked_add(x.exponent, checked_neg(x.m)), checked_neg(x.m)};
      return r;
    }
  }
  throw GroupError("unreachable");
}

GroupElement Group::generator(Letter letter) const {
  const auto pos = symbols_.find(letter.symbol);
  if (pos == std::string::npos)
    throw GroupError(std::string("unknown symbol '") + letter.symbol + "' for " + to_string(desc_));
  const bool inv = letter.inverse && !is_involution(letter.symbol);
  const std::int64_t sign = inv ? -1 : 1;
  switch (desc_.family) {
    case Family::lattice: {
      LatticeElement e;
      e.coords.assign(static_cast<std::size_t>(desc_.param), 0);
      e.coords[pos] = sign;
      return e;
    }
    case Family::free: {
      FreeElement e;
      e.letters.push_back(static_cast<std::int8_t>(sign * static_cast<std::int64_t>(pos + 1)));
      return e;
    }
    case Family::heisenberg:
      return pos == 0 ? HeisenbergElement{sign, 0, 0} : HeisenbergElement{0, sign, 0};
    case Family::lamplighter: {
      LamplighterElement e;
      if (pos == 0)
        e.lamps.push_back(0);
      else
        e.cursor = sign;
      return e;
    }
    case Family::bs12:
      if (pos == 0) return DyadicElement{0, 0, sign};
      return DyadicElement{sign, 0, 0};
  }
  throw GroupError("unreachable");
}

std::vector<Letter> Group::parse_word(std::string_view word) const {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const char c = word[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '-') throw GroupError("'-' must follow a generator symbol in word '" + std::string(word) + "'");
    if (symbols_.find(c) == std::string::npos)
      throw GroupError(std::string("unknown symbol '") + c + "' for " + to_string(desc_));
    Letter l{c, false};
    if (i + 1 < word.size() && word[i + 1] == '-') {
      l.inverse = true;
      ++i;
    }
    out.push_back(l);
  }
  return out;
}

GroupElement Group::evaluate_word(std::span<const Letter> letters) const {
  GroupElement g = identity();
  for (const auto& l : letters) g = multiply(g, generator(l));
  return g;
}

GroupElement Group::evaluate_word(std::string_view word) const {
  const auto letters = parse_word(word);
  return evaluate_word(letters);
}

IntVector Group::project(const GroupElement& a) const {
  require_member(a);
  switch (desc_.family) {
    case Family::lattice: {
      const auto& c = std::get<LatticeElement>(a).coords;
      return IntVector(c.begin(), c.end());
    }
    case Family::free: {
      IntVector v(static_cast<std::size_t>(desc_.param), 0);
      for (auto l : std::get<FreeElement>(a).letters) v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
      return v;
    }
    case Family::heisenberg: {
      const auto& h = std::get<HeisenbergElement>(a);
      return {h.x, h.y};
    }
    case Family::lamplighter: return {std::get<LamplighterElement>(a).cursor};
    case Family::bs12: return {std::get<DyadicElement>(a).m};
  }
  throw GroupError("unreachable");
}

GroupElement Group::decode_key(std::string_view key) const {
  KeyReader in(key);
  const char tag = static_cast<char>(in.u8());
  GroupElement out;
  switch (tag) {
    case 'L': {
      LatticeElement e;
      const auto k = in.u32();
      for (std::uint32_t i = 0; i < k; ++i) e.coords.push_back(in.i64());
      out = std::move(e);
      break;
    }
    case 'F': {
      FreeElement e;
      const auto len = in.u32();
      for (std::uint32_t i = 0; i < len; ++i) e.letters.push_back(static_cast<std::int8_t>(in.u8()));
      for (std::size_t i = 1; i < e.letters.size(); ++i)
        if (e.letters[i] == -e.letters[i - 1]) throw GroupError("free key is not reduced");
      out = std::move(e);
      break;
    }
    case 'H': {
      HeisenbergElement e;
      e.x = in.i64();
      e.y = in.i64();
      e.z = in.i64();
      out = e;
      break;
    }
    case 'P': {
      LamplighterElement e;
      e.cursor = in.i64();
      const auto count = in.u32();
      for (std::uint32_t i = 0; i < count; ++i) e.lamps.push_back(in.i64());
      if (!std::is_sorted(e.lamps.begin(), e.lamps.end()) ||
          std::adjacent_find(e.lamps.begin(), e.lamps.end()) != e.lamps.end())
        throw GroupError("lamplighter key lamps not strictly ascending");
      out = std::move(e);
      break;
    }
    case 'B': {
      DyadicElement e;
      e.m = in.i64();
      e.exponent = in.i64();
      const auto sign = in.u8();
      const auto nbytes = in.u32();
      const auto mag = in.raw(nbytes);
      if (nbytes > 0) mp::import_bits(e.numerator, mag.begin(), mag.end(), 8, true);
      if (sign == 2) e.numerator = -e.numerator;
      if (sign > 2 || (sign == 0) != (e.numerator == 0)) throw GroupError("bad dyadic sign byte");
      if (e.numerator == 0 ? e.exponent != 0 : !mp::bit_test(mp::cpp_int(mp::abs(e.numerator)), 0))
        throw GroupError("dyadic key not normalized");
      out = std::move(e);
      break;
    }
    default: throw GroupError("unknown canonical key tag");
  }
  if (!in.done()) throw GroupError("trailing bytes in canonical key");
  require_member(out);
  return out;
}

}  // namespace rwg
