#include "weft/sltf/eval.hpp"

#include <algorithm>
#include <map>

namespace weft::sltf {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw AlignmentError(what);
}

}  // namespace

Stream eval_elementwise(std::span<const Stream> inputs,
                        const std::function<Tuple(std::span<const Tuple>)>& f) {
  require(!inputs.empty(), "elementwise needs at least one input");
  size_t n = inputs[0].size();
  for (const Stream& s : inputs)
    if (s.size() != n)
      throw AlignmentError("elementwise inputs disagree on token count");
  Stream out;
  out.reserve(n);
  std::vector<Tuple> args(inputs.size());
  for (size_t i = 0; i < n; ++i) {
    const Token& first = inputs[0][i];
    for (const Stream& s : inputs) {
      if (s[i].kind != first.kind ||
          (first.is_barrier() && s[i].level != first.level))
        throw AlignmentError("elementwise inputs misaligned at token " +
                             std::to_string(i));
    }
    if (first.is_barrier()) {
      out.push_back(first);
      continue;
    }
    for (size_t k = 0; k < inputs.size(); ++k) args[k] = inputs[k][i].elems;
    out.push_back(Token::element(f(args)));
  }
  return out;
}

Stream eval_ew_binop(BinOp op, const Stream& a, const Stream& b, Width w) {
  Stream ins[2] = {a, b};
  return eval_elementwise(ins, [&](std::span<const Tuple> xs) {
    return tup(apply_binop(op, xs[0][0].bits, xs[1][0].bits, w));
  });
}

Stream eval_ew_store(const Stream& addr, const Stream& data, TestMemory& mem) {
  Stream ins[2] = {addr, data};
  return eval_elementwise(ins, [&](std::span<const Tuple> xs) {
    int32_t a = xs[0][0].bits;
    if (a < 0 || static_cast<size_t>(a) >= mem.words.size())
      throw TrapError(TrapKind::OutOfBounds, "store out of bounds");
    mem.words[a] = xs[1][0].bits;
    return Tuple{Val::void_val()};
  });
}

Stream eval_ew_load(const Stream& addr, TestMemory& mem) {
  Stream ins[1] = {addr};
  return eval_elementwise(ins, [&](std::span<const Tuple> xs) {
    int32_t a = xs[0][0].bits;
    if (a < 0 || static_cast<size_t>(a) >= mem.words.size())
      throw TrapError(TrapKind::OutOfBounds, "load out of bounds");
    return tup(mem.words[a]);
  });
}

namespace {

// Shared expansion skeleton: per input element emit a child sequence, then
// that element's inner-dimension end.  The level-1 barrier of a nonempty
// last sequence is subsumed by the next incoming barrier, exactly as the
// wire encoding would have it; an empty sequence closes explicitly.
Stream counter_expand(
    const Stream& in,
    const std::function<void(const Tuple&, std::vector<Tuple>*)>& expand) {
  Stream out;
  bool pending_close = false;  // a nonempty sequence awaiting its barrier
  std::vector<Tuple> seq;
  for (const Token& t : in) {
    if (t.is_elem()) {
      if (pending_close) {
        out.push_back(Token::barrier(1));
        pending_close = false;
      }
      seq.clear();
      expand(t.elems, &seq);
      for (Tuple& e : seq) out.push_back(Token::element(std::move(e)));
      if (seq.empty())
        out.push_back(Token::barrier(1));
      else
        pending_close = true;
    } else {
      // Subsume the pending level-1 close into the lifted barrier.
      pending_close = false;
      out.push_back(Token::barrier(t.level + 1));
    }
  }
  return out;
}

}  // namespace

Stream eval_counter(const Stream& mins, const Stream& maxs,
                    const Stream& steps) {
  Stream zipped = eval_elementwise(
      std::array<Stream, 3>{mins, maxs, steps},
      [](std::span<const Tuple> xs) {
        return Tuple{xs[0][0], xs[1][0], xs[2][0]};
      });
  return counter_expand(zipped, [](const Tuple& t, std::vector<Tuple>* seq) {
    int64_t lo = t[0].bits, hi = t[1].bits, st = t[2].bits;
    if (st == 0) {
      if (lo < hi)
        throw TrapError(TrapKind::NonterminatingRange,
                        "counter step 0 with min < max");
      return;
    }
    if (st > 0)
      for (int64_t v = lo; v < hi; v += st) seq->push_back(tup(int32_t(v)));
    else
      for (int64_t v = lo; v > hi; v += st) seq->push_back(tup(int32_t(v)));
  });
}

Stream eval_broadcast(const Stream& scalar_side, const Stream& shape_side,
                      int levels) {
  Stream out;
  size_t cur = 0;
  bool open = false;  // the current level-`levels` group has content
  auto front_elem = [&]() -> const Tuple& {
    if (cur >= scalar_side.size() || !scalar_side[cur].is_elem())
      throw AlignmentError("broadcast scalar side exhausted or misaligned");
    return scalar_side[cur].elems;
  };
  for (const Token& t : shape_side) {
    if (t.is_elem()) {
      out.push_back(Token::element(front_elem()));
      open = true;
      continue;
    }
    out.push_back(t);
    if (t.level < levels) {
      open = true;  // a subgroup closed inside the current group
    } else if (t.level == levels) {
      front_elem();
      ++cur;
      open = false;
    } else {
      // A higher barrier implicitly closes a nonempty group first.
      if (open) {
        front_elem();
        ++cur;
        open = false;
      }
      if (cur >= scalar_side.size() || !scalar_side[cur].is_barrier() ||
          scalar_side[cur].level != t.level - levels)
        throw AlignmentError("broadcast scalar side barrier misaligned");
      ++cur;
    }
  }
  if (cur != scalar_side.size())
    throw AlignmentError("broadcast scalar side has leftover tokens");
  return out;
}

Stream eval_reduce(RedOp op, const Stream& s) {
  Stream out;
  int32_t acc = redop_identity(op);
  bool open = false;  // elements seen since the current group began
  auto emit_group = [&] {
    if (op == RedOp::VoidR)
      out.push_back(Token::void_element());
    else
      out.push_back(Token::element(acc));
    acc = redop_identity(op);
    open = false;
  };
  for (const Token& t : s) {
    if (t.is_elem()) {
      acc = apply_redop(op, acc, t.elems[0].is_void ? 0 : t.elems[0].bits);
      open = true;
    } else if (t.level == 1) {
      emit_group();
    } else {
      if (open) emit_group();
      out.push_back(Token::barrier(t.level - 1));
    }
  }
  return out;
}

Stream eval_flatten(const Stream& s) {
  Stream out;
  for (const Token& t : s) {
    if (t.is_elem())
      out.push_back(t);
    else if (t.level > 1)
      out.push_back(Token::barrier(t.level - 1));
  }
  return out;
}

FilterResult eval_filter(const Stream& data, const Stream& pred) {
  if (data.size() != pred.size())
    throw AlignmentError("filter data/predicate disagree on token count");
  FilterResult r;
  for (size_t i = 0; i < data.size(); ++i) {
    const Token& d = data[i];
    const Token& p = pred[i];
    if (d.kind != p.kind || (d.is_barrier() && d.level != p.level))
      throw AlignmentError("filter data/predicate misaligned");
    if (d.is_barrier()) {
      r.kept.push_back(d);
      r.dropped.push_back(d);
    } else if (p.elems[0].bits != 0) {
      r.kept.push_back(d);
    } else {
      r.dropped.push_back(d);
    }
  }
  return r;
}

Stream eval_forward_merge(const Stream& a, const Stream& b) {
  Stream out;
  size_t ia = 0, ib = 0;
  int turn = 0;  // deterministic alternation, first input first
  while (ia < a.size() || ib < b.size()) {
    bool ea = ia < a.size() && a[ia].is_elem();
    bool eb = ib < b.size() && b[ib].is_elem();
    if (ea && (turn == 0 || !eb)) {
      out.push_back(a[ia++]);
      turn = 1;
    } else if (eb) {
      out.push_back(b[ib++]);
      turn = 0;
    } else {
      // Both fronts are barriers (or a stream ended early).
      if (ia >= a.size() || ib >= b.size())
        throw BarrierMismatch("merge input ended without matching barrier");
      if (a[ia].level != b[ib].level)
        throw BarrierMismatch("merge saw unequal barrier levels");
      out.push_back(a[ia]);
      ++ia;
      ++ib;
      turn = 0;
    }
  }
  return out;
}

FbResult eval_fb_merge(const Stream& entry, const FbBody& body) {
  FbResult r;
  std::vector<Tuple> wave;
  auto push_all = [](Stream* s, const std::vector<Tuple>& es) {
    for (const Tuple& e : es) s->push_back(Token::element(e));
  };
  for (const Token& t : entry) {
    if (t.is_elem()) {
      wave.push_back(t.elems);
      continue;
    }
    // An entry barrier drains the loop completely before it is released:
    // the header reserves level 1 for wave framing and re-emits the held
    // barrier one level up once the backedge runs dry.
    for (;;) {
      push_all(&r.body_in, wave);
      r.body_in.push_back(Token::barrier(1));
      std::vector<Tuple> cont, exits;
      body(wave, &cont, &exits);
      push_all(&r.exit, exits);
      push_all(&r.backedge, cont);
      r.backedge.push_back(Token::barrier(1));
      if (cont.empty()) break;
      wave = std::move(cont);
    }
    r.body_in.push_back(Token::barrier(t.level + 1));
    r.exit.push_back(Token::barrier(t.level));
    wave.clear();
  }
  return r;
}

// ---------------------------------------------------------------------

std::vector<uint8_t> barrier_seq(const Stream& s) {
  std::vector<uint8_t> out;
  for (const Token& t : s)
    if (t.is_barrier()) out.push_back(t.level);
  return out;
}

std::vector<std::vector<int32_t>> segment_multisets(const Stream& s,
                                                    int slot) {
  std::vector<std::vector<int32_t>> out(1);
  for (const Token& t : s) {
    if (t.is_elem())
      out.back().push_back(t.elems[size_t(slot)].bits);
    else
      out.emplace_back();
  }
  for (auto& seg : out) std::sort(seg.begin(), seg.end());
  return out;
}

namespace {

void audit_same_barriers(const Stream& in, const Stream& out,
                         const char* what) {
  if (barrier_seq(in) != barrier_seq(out))
    throw BarrierMismatch(std::string(what) + ": barrier sequence changed");
}

void audit_multisets(const std::vector<std::vector<int32_t>>& a,
                     const std::vector<std::vector<int32_t>>& b,
                     const char* what) {
  if (a != b)
    throw BarrierMismatch(std::string(what) +
                          ": per-segment element multiset changed");
}

std::vector<std::vector<int32_t>> multiset_union(
    std::vector<std::vector<int32_t>> a,
    const std::vector<std::vector<int32_t>>& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) {
    a[i].insert(a[i].end(), b[i].begin(), b[i].end());
    std::sort(a[i].begin(), a[i].end());
  }
  return a;
}

}  // namespace

std::vector<Stream> eval_network(const Network& net,
                                 std::span<const Stream> inputs,
                                 bool audit) {
  // Per node: primary output stream; filters also produce a drop stream
  // addressed as node id + 10000.
  std::map<int, Stream> outs;
  auto fetch = [&](int ref) -> const Stream& {
    if (ref < 0) return inputs[size_t(-1 - ref)];
    return outs.at(ref);
  };
  constexpr int kUid = 1;  // fuzz tuples carry (value, uid)
  for (size_t ni = 0; ni < net.nodes.size(); ++ni) {
    const PrimitiveNode& n = net.nodes[ni];
    const Stream& in0 = fetch(n.ins.at(0));
    switch (n.kind) {
      case PrimitiveNode::Kind::Elementwise: {
        Stream ins[1] = {in0};
        Stream o = eval_elementwise(ins, [](std::span<const Tuple> xs) {
          Tuple t = xs[0];
          t[0].bits = wrap(int64_t(t[0].bits) * 3 + 1, Width::I32);
          return t;
        });
        if (audit) {
          audit_same_barriers(in0, o, "elementwise");
          audit_multisets(segment_multisets(in0, kUid),
                          segment_multisets(o, kUid), "elementwise");
        }
        outs[int(ni)] = std::move(o);
        break;
      }
      case PrimitiveNode::Kind::Counter: {
        Stream o = counter_expand(in0, [](const Tuple& t,
                                          std::vector<Tuple>* seq) {
          int32_t hi = t[0].bits & 3;
          for (int32_t v = 0; v < hi; ++v) seq->push_back(Tuple{Val::of(v), t[1]});
        });
        if (audit) {
          std::vector<uint8_t> want;
          for (uint8_t l : barrier_seq(in0)) want.push_back(l + 1);
          std::vector<uint8_t> got;
          for (uint8_t l : barrier_seq(o))
            if (l > 1) got.push_back(l);
          if (want != got)
            throw BarrierMismatch("counter: lifted barrier sequence changed");
        }
        outs[int(ni)] = std::move(o);
        break;
      }
      case PrimitiveNode::Kind::Reduce: {
        Stream o = eval_reduce(n.red, in0);
        if (audit) {
          std::vector<uint8_t> want;
          for (uint8_t l : barrier_seq(in0))
            if (l > 1) want.push_back(l - 1);
          if (want != barrier_seq(o))
            throw BarrierMismatch("reduce: barrier sequence mismatch");
        }
        outs[int(ni)] = std::move(o);
        break;
      }
      case PrimitiveNode::Kind::Flatten: {
        Stream o = eval_flatten(in0);
        if (audit) {
          std::vector<uint8_t> want;
          for (uint8_t l : barrier_seq(in0))
            if (l > 1) want.push_back(l - 1);
          if (want != barrier_seq(o))
            throw BarrierMismatch("flatten: barrier sequence mismatch");
        }
        outs[int(ni)] = std::move(o);
        break;
      }
      case PrimitiveNode::Kind::Filter: {
        Stream ins[1] = {in0};
        Stream pred = eval_elementwise(ins, [](std::span<const Tuple> xs) {
          return tup((xs[0][0].bits & 1) == 0);
        });
        FilterResult fr = eval_filter(in0, pred);
        if (audit) {
          audit_same_barriers(in0, fr.kept, "filter kept");
          audit_same_barriers(in0, fr.dropped, "filter dropped");
          audit_multisets(
              segment_multisets(in0, kUid),
              multiset_union(segment_multisets(fr.kept, kUid),
                             segment_multisets(fr.dropped, kUid)),
              "filter");
        }
        outs[int(ni)] = std::move(fr.kept);
        outs[int(ni) + 10000] = std::move(fr.dropped);
        break;
      }
      case PrimitiveNode::Kind::ForwardMerge: {
        const Stream& in1 = fetch(n.ins.at(1));
        Stream o = eval_forward_merge(in0, in1);
        if (audit) {
          audit_same_barriers(in0, o, "fwd-merge");
          audit_multisets(
              segment_multisets(o, kUid),
              multiset_union(segment_multisets(in0, kUid),
                             segment_multisets(in1, kUid)),
              "fwd-merge");
        }
        outs[int(ni)] = std::move(o);
        break;
      }
      case PrimitiveNode::Kind::FbLoop: {
        FbResult fr = eval_fb_merge(
            in0, [](const std::vector<Tuple>& wave, std::vector<Tuple>* cont,
                    std::vector<Tuple>* exit) {
              for (Tuple t : wave) {
                t[0].bits -= 1;
                if (t[0].bits > 0)
                  cont->push_back(std::move(t));
                else
                  exit->push_back(std::move(t));
              }
            });
        if (audit) {
          audit_same_barriers(in0, fr.exit, "fb-merge exit");
          audit_multisets(segment_multisets(in0, kUid),
                          segment_multisets(fr.exit, kUid), "fb-merge exit");
        }
        outs[int(ni)] = std::move(fr.exit);
        break;
      }
      case PrimitiveNode::Kind::Broadcast: {
        const Stream& shape = fetch(n.ins.at(1));
        Stream o = eval_broadcast(in0, shape, 1);
        if (audit) audit_same_barriers(shape, o, "broadcast");
        outs[int(ni)] = std::move(o);
        break;
      }
    }
  }
  std::vector<Stream> result;
  for (size_t ni = 0; ni < net.nodes.size(); ++ni)
    result.push_back(outs[int(ni)]);
  return result;
}

}  // namespace weft::sltf
