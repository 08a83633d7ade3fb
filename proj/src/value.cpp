#include "speedup/value.hpp"

#include "speedup/errors.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace speedup {

namespace detail {

struct ValueNode {
  Value::Kind kind = Value::Kind::Bit;
  std::int64_t num = 0;
  std::int64_t den = 1;
  std::string symbol;
  std::optional<int> box;
  std::vector<Vertex> seen;
  std::string encoding;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

// Tags are chosen so that every encoding is self-delimiting, which makes the
// concatenation used for views injective.
constexpr char kTagRational = 'Q';
constexpr char kTagBit = 'B';
constexpr char kTagSymbol = 'S';
constexpr char kTagView = 'V';

void put_u64(std::string& out, std::uint64_t x) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((x >> shift) & 0xFF));
  }
}

void put_u32(std::string& out, std::uint32_t x) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((x >> shift) & 0xFF));
  }
}

// Flipping the sign bit makes big-endian byte order agree with signed order.
std::uint64_t order_preserving(std::int64_t x) {
  return static_cast<std::uint64_t>(x) ^ (std::uint64_t{1} << 63);
}

class InternPool {
 public:
  const detail::ValueNode* intern(detail::ValueNode node) {
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(node.encoding); it != table_.end()) {
      return it->second.get();
    }
    node.hash = std::hash<std::string>{}(node.encoding);
    auto owned = std::make_unique<detail::ValueNode>(std::move(node));
    const auto* raw = owned.get();
    table_.emplace(std::string_view(raw->encoding), std::move(owned));
    return raw;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::string_view, std::unique_ptr<detail::ValueNode>> table_;
};

// Never destroyed: values are handed out as raw pointers for the lifetime of
// the process.
InternPool& pool() {
  static auto* p = new InternPool();
  return *p;
}

}  // namespace

Value Value::intern(detail::ValueNode node) { return Value(pool().intern(std::move(node))); }

Value Value::rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0) {
    throw BadGridError("rational denominator must be positive");
  }
  detail::ValueNode node;
  node.kind = Kind::Rational;
  node.num = numerator;
  node.den = denominator;
  node.encoding.push_back(kTagRational);
  put_u64(node.encoding, order_preserving(denominator));
  put_u64(node.encoding, order_preserving(numerator));
  return intern(std::move(node));
}

Value Value::bit(int b) {
  if (b != 0 && b != 1) {
    throw Error("bit value must be 0 or 1");
  }
  detail::ValueNode node;
  node.kind = Kind::Bit;
  node.num = b;
  node.encoding = {kTagBit, static_cast<char>(b)};
  return intern(std::move(node));
}

Value Value::symbol(std::string_view name) {
  detail::ValueNode node;
  node.kind = Kind::Symbol;
  node.symbol = std::string(name);
  node.encoding.push_back(kTagSymbol);
  put_u32(node.encoding, static_cast<std::uint32_t>(name.size()));
  node.encoding.append(name);
  return intern(std::move(node));
}

Value Value::view(std::optional<int> box, std::vector<Vertex> seen) {
  if (box && *box != 0 && *box != 1) {
    throw Error("box output must be 0 or 1");
  }
  if (seen.empty()) {
    throw EmptyError("a view must contain at least the owner's value");
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i - 1].id == seen[i].id) {
      throw NonChromaticError("view reads process " + std::to_string(seen[i].id.value) +
                              " twice");
    }
  }
  detail::ValueNode node;
  node.kind = Kind::View;
  node.box = box;
  node.encoding.push_back(kTagView);
  node.encoding.push_back(box ? static_cast<char>(*box) : static_cast<char>(0x7F));
  put_u32(node.encoding, static_cast<std::uint32_t>(seen.size()));
  for (const auto& v : seen) {
    put_u32(node.encoding, static_cast<std::uint32_t>(v.id.value));
    node.encoding.append(v.value.encoding());
  }
  node.seen = std::move(seen);
  return intern(std::move(node));
}

Value::Kind Value::kind() const noexcept { return node_->kind; }

std::int64_t Value::numerator() const {
  if (kind() != Kind::Rational) throw Error("not a rational value");
  return node_->num;
}

std::int64_t Value::denominator() const {
  if (kind() != Kind::Rational) throw Error("not a rational value");
  return node_->den;
}

int Value::bit_value() const {
  if (kind() != Kind::Bit) throw Error("not a bit value");
  return static_cast<int>(node_->num);
}

const std::string& Value::symbol_name() const {
  if (kind() != Kind::Symbol) throw Error("not a symbol value");
  return node_->symbol;
}

std::optional<int> Value::box() const {
  if (kind() != Kind::View) throw Error("not a view value");
  return node_->box;
}

const std::vector<Vertex>& Value::seen() const {
  if (kind() != Kind::View) throw Error("not a view value");
  return node_->seen;
}

std::optional<Value> Value::seen_value(ProcessId id) const {
  for (const auto& v : seen()) {
    if (v.id == id) return v.value;
  }
  return std::nullopt;
}

std::string_view Value::encoding() const noexcept { return node_->encoding; }

std::size_t Value::hash() const noexcept { return node_->hash; }

std::string Value::to_string() const {
  switch (kind()) {
    case Kind::Rational:
      return std::to_string(node_->num) + "/" + std::to_string(node_->den);
    case Kind::Bit:
      return std::to_string(node_->num);
    case Kind::Symbol:
      return node_->symbol;
    case Kind::View: {
      std::string out = "[";
      if (node_->box) out += "b=" + std::to_string(*node_->box) + "|";
      bool first = true;
      for (const auto& v : node_->seen) {
        if (!first) out += ",";
        first = false;
        out += v.to_string();
      }
      return out + "]";
    }
  }
  return {};
}

std::strong_ordering operator<=>(Value a, Value b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const int c = a.encoding().compare(b.encoding());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Vertex::to_string() const {
  return std::to_string(id.value) + ":" + value.to_string();
}

std::strong_ordering compare_rational(Value a, Value b) {
  const __int128 lhs = static_cast<__int128>(a.numerator()) * b.denominator();
  const __int128 rhs = static_cast<__int128>(b.numerator()) * a.denominator();
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace speedup
