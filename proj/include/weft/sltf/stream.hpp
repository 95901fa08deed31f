#pragma once

// Structured-link tensor streams: data elements plus out-of-band barrier
// tokens that close tensor dimensions.  A barrier of level n ends dimension
// n and implicitly closes any nonempty lower dimensions; empty dimensions
// are always closed explicitly so that [[]], [[],[]] and [] stay distinct.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace weft::sltf {

constexpr int kMaxBarrierLevel = 15;

struct Val {
  int32_t bits = 0;
  bool is_void = false;

  static Val of(int32_t v) { return Val{v, false}; }
  static Val void_val() { return Val{0, true}; }
  bool operator==(const Val& o) const {
    return is_void == o.is_void && (is_void || bits == o.bits);
  }
};

// One dataflow thread's live values.  Arity is 1 for plain value streams.
using Tuple = boost::container::small_vector<Val, 6>;

inline Tuple tup(int32_t v) { return Tuple{Val::of(v)}; }

struct Token {
  enum class Kind : uint8_t { Element, Barrier };
  Kind kind = Kind::Element;
  Tuple elems;        // Element
  uint8_t level = 0;  // Barrier

  static Token element(Tuple t) { return Token{Kind::Element, std::move(t), 0}; }
  static Token element(int32_t v) { return element(tup(v)); }
  static Token void_element() { return element(Tuple{Val::void_val()}); }
  static Token barrier(int level) {
    return Token{Kind::Barrier, {}, static_cast<uint8_t>(level)};
  }
  bool is_elem() const { return kind == Kind::Element; }
  bool is_barrier() const { return kind == Kind::Barrier; }
  bool operator==(const Token& o) const {
    if (kind != o.kind) return false;
    return is_barrier() ? level == o.level : elems == o.elems;
  }
};

using Stream = std::vector<Token>;

class MalformedStream : public std::runtime_error {
 public:
  explicit MalformedStream(const std::string& w) : std::runtime_error(w) {}
};

// Ragged k-dimensional tensor: all leaves at exactly depth k, empty lists
// permitted at any level.
struct Ragged {
  int depth = 1;
  std::vector<Ragged> kids;  // depth > 1
  std::vector<Tuple> elems;  // depth == 1

  static Ragged leaf(std::vector<Tuple> es) {
    Ragged r;
    r.depth = 1;
    r.elems = std::move(es);
    return r;
  }
  static Ragged leaf_of(std::initializer_list<int32_t> vs) {
    std::vector<Tuple> es;
    for (int32_t v : vs) es.push_back(tup(v));
    return leaf(std::move(es));
  }
  static Ragged nest(std::vector<Ragged> ks, int depth) {
    Ragged r;
    r.depth = depth;
    r.kids = std::move(ks);
    return r;
  }
  bool empty_group() const { return depth == 1 ? elems.empty() : kids.empty(); }
  size_t size() const { return depth == 1 ? elems.size() : kids.size(); }
  bool operator==(const Ragged& o) const;
};

Stream encode(const Ragged& t);
Ragged decode(const Stream& s, int depth);

// Validates stream shape at a given depth without building the tensor:
// terminates with a single top-level barrier, levels never exceed depth,
// no tokens after the terminator.
void check_wellformed(const Stream& s, int depth);

// One cycle of link traffic: up to `width` elements and at most one
// barrier, elements first.  A barrier always ends its beat.
struct Beat {
  std::vector<Tuple> elems;
  std::optional<uint8_t> barrier;
  bool operator==(const Beat& o) const {
    return elems == o.elems && barrier == o.barrier;
  }
};

std::vector<Beat> frame(const Stream& s, int width);
Stream unframe(const std::vector<Beat>& beats);

// Textual literal format used by golden tests: "0 1 !1 2 !2" where !n is a
// barrier of level n and _ is a void element.  Tuples print as (a,b,_).
Stream parse_stream(const std::string& text);
std::string print_stream(const Stream& s);

}  // namespace weft::sltf
