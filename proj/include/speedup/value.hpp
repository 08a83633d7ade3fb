#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace speedup {

/// Process identifier in 1..n.
struct ProcessId {
  int value = 0;

  friend auto operator<=>(ProcessId, ProcessId) = default;
};

struct Vertex;

namespace detail {
struct ValueNode;
}

/// A canonical, immutable term carried by a vertex.
///
/// Values are hash-consed: two values with the same canonical encoding are
/// the same object, so equality is a pointer comparison and the total order
/// is the lexicographic order of the encodings. Rational encodings preserve
/// numeric order among values sharing a denominator.
///
/// A `View` value is the full-information state of a process after one or
/// more rounds: an optional black-box output together with the values read
/// from each process (itself included). A round-0 view is just the input.
class Value {
 public:
  enum class Kind : std::uint8_t { Rational, Bit, Symbol, View };

  static Value rational(std::int64_t numerator, std::int64_t denominator);
  static Value bit(int b);
  static Value symbol(std::string_view name);
  /// `seen` must be chromatic; it is sorted by id on construction.
  static Value view(std::optional<int> box, std::vector<Vertex> seen);

  Kind kind() const noexcept;

  std::int64_t numerator() const;
  std::int64_t denominator() const;
  int bit_value() const;
  const std::string& symbol_name() const;
  std::optional<int> box() const;
  const std::vector<Vertex>& seen() const;
  /// Value read from process `id` in a view, if any.
  std::optional<Value> seen_value(ProcessId id) const;

  bool is_view() const noexcept { return kind() == Kind::View; }

  std::string_view encoding() const noexcept;
  std::size_t hash() const noexcept;
  /// Human-readable rendering ("1/4", "0", "x", "[b=1|1:0,2:1]").
  std::string to_string() const;

  friend bool operator==(Value a, Value b) noexcept { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Value a, Value b) noexcept;

 private:
  explicit Value(const detail::ValueNode* node) noexcept : node_(node) {}
  static Value intern(detail::ValueNode node);

  const detail::ValueNode* node_;
};

/// A vertex is a (process id, value) pair.
struct Vertex {
  ProcessId id;
  Value value;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) noexcept {
    if (auto c = a.id <=> b.id; c != 0) return c;
    return a.value <=> b.value;
  }

  std::string to_string() const;
};

/// Rational comparison by cross-multiplication; both must be rationals.
std::strong_ordering compare_rational(Value a, Value b);

struct ValueHash {
  std::size_t operator()(Value v) const noexcept { return v.hash(); }
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    return v.value.hash() * 31u + static_cast<std::size_t>(v.id.value);
  }
};

}  // namespace speedup
