#pragma once

// Functional (untimed) evaluators for the streaming primitives.  These are
// pure batch transformations over whole streams; the simulator implements
// the same semantics incrementally with backpressure.
//
// Every primitive obeys two conservation rules: each input barrier exits
// exactly once, in order (levels shifted only by the expanding/contracting
// primitives), and element data is never reordered across a barrier.

#include <functional>
#include <span>
#include <vector>

#include "weft/ops.hpp"
#include "weft/sltf/stream.hpp"

namespace weft::sltf {

class AlignmentError : public std::runtime_error {
 public:
  explicit AlignmentError(const std::string& w) : std::runtime_error(w) {}
};

class BarrierMismatch : public std::runtime_error {
 public:
  explicit BarrierMismatch(const std::string& w) : std::runtime_error(w) {}
};

// Element-wise map over N aligned input streams.  Barriers must coincide
// position-for-position and level-for-level; they pass through unchanged.
Stream eval_elementwise(std::span<const Stream> inputs,
                        const std::function<Tuple(std::span<const Tuple>)>& f);

// Convenience wrappers for the common cases.
Stream eval_ew_binop(BinOp op, const Stream& a, const Stream& b,
                     Width w = Width::I32);

// Word-addressed scratch memory for exercising the void-token protocol at
// stream level.
struct TestMemory {
  std::vector<int32_t> words;
  explicit TestMemory(size_t n) : words(n, 0) {}
};
// store: consumes (addr, data), produces a void element per thread.
Stream eval_ew_store(const Stream& addr, const Stream& data, TestMemory& mem);
// load: consumes addr, produces the read value.
Stream eval_ew_load(const Stream& addr, TestMemory& mem);

// Counter: three aligned k-D streams (min, max, step) -> (k+1)-D stream.
// Each input element expands to its arithmetic sequence; an empty range
// still closes its inner dimension so the iteration slot is never lost.
// Input barriers rise one level.
Stream eval_counter(const Stream& mins, const Stream& maxs,
                    const Stream& steps);

// Broadcast: scalar-side k-D stream against a (k+1..k+levels)-D shape
// stream; each scalar element is repeated for every element of the
// corresponding level-`levels` group of the shape side, and popped when
// that group's barrier arrives.  Output barriers follow the shape side.
Stream eval_broadcast(const Stream& scalar_side, const Stream& shape_side,
                      int levels = 1);

// Reduce: (k+1)-D -> k-D; every innermost group (including empty ones)
// becomes exactly one element; barrier levels drop by one.
Stream eval_reduce(RedOp op, const Stream& s);

// Flatten / level-strip: removes the innermost dimension boundary; level-1
// barriers vanish, higher levels drop by one, elements untouched.
Stream eval_flatten(const Stream& s);

// Filter: splits one stream into (kept, dropped) by an aligned predicate;
// barriers appear in both outputs.
struct FilterResult {
  Stream kept;
  Stream dropped;
};
FilterResult eval_filter(const Stream& data, const Stream& pred);

// Forward merge: eager interleave of two streams that synchronizes on
// matching barriers.  The functional form alternates deterministically
// starting with `a`; timing-dependent interleavings exist only in the
// simulator, and only within a barrier segment.
Stream eval_forward_merge(const Stream& a, const Stream& b);

// Forward-backward merge (loop header).  The body callback receives one
// wave of thread tuples and returns the tuples that continue around the
// backedge and the tuples that leave the loop, in that order.
struct FbResult {
  Stream body_in;   // waves entering the body, each closed by a level-1 barrier
  Stream backedge;  // continuing waves as seen on the backedge
  Stream exit;      // stream leaving the loop, barrier levels restored
};
using FbBody = std::function<void(const std::vector<Tuple>& wave,
                                  std::vector<Tuple>* cont,
                                  std::vector<Tuple>* exit)>;
FbResult eval_fb_merge(const Stream& entry, const FbBody& body);

// ---------------------------------------------------------------------
// Small primitive networks, used for conservation fuzzing.

struct PrimitiveNode {
  enum class Kind {
    Elementwise,  // unary value transform on slot 0
    Counter,      // expands each element v into 0..(v mod 4)
    Reduce,
    Flatten,
    Filter,       // kept = elements with (value & 1) == 0
    ForwardMerge,
    FbLoop,       // while-like: decrement slot 0, continue while > 0
    Broadcast,    // second input gives shape
  };
  Kind kind;
  RedOp red = RedOp::Add;
  std::vector<int> ins;  // upstream node ids; -1 = network input
};

struct Network {
  std::vector<PrimitiveNode> nodes;
};

// Evaluates the network over the given input streams; with `audit` set,
// verifies barrier conservation and segment-multiset preservation at every
// node and throws BarrierMismatch on violation.
std::vector<Stream> eval_network(const Network& net,
                                 std::span<const Stream> inputs,
                                 bool audit = true);

// Audit helpers (also used by tests directly).
std::vector<uint8_t> barrier_seq(const Stream& s);
// Multisets of per-segment element identities (tuple slot `slot`).
std::vector<std::vector<int32_t>> segment_multisets(const Stream& s, int slot);

}  // namespace weft::sltf
