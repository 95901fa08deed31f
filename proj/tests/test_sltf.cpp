#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weft/sltf/eval.hpp"
#include "weft/sltf/stream.hpp"

using namespace weft;
using namespace weft::sltf;

namespace {

Stream lit(const std::string& s) { return parse_stream(s); }

Ragged random_ragged(std::mt19937_64& rng, int depth, int fuel) {
  if (depth == 1) {
    std::vector<Tuple> es;
    int n = int(rng() % 4);
    for (int i = 0; i < n; ++i) es.push_back(tup(int32_t(rng() % 100)));
    return Ragged::leaf(std::move(es));
  }
  std::vector<Ragged> kids;
  int n = fuel <= 0 ? 0 : int(rng() % 4);
  for (int i = 0; i < n; ++i)
    kids.push_back(random_ragged(rng, depth - 1, fuel - 1));
  return Ragged::nest(std::move(kids), depth);
}

}  // namespace

TEST_CASE("encode matches the worked examples") {
  Ragged t = Ragged::nest(
      {Ragged::leaf_of({0, 1}), Ragged::leaf_of({2})}, 2);
  CHECK(print_stream(encode(t)) == "0 1 !1 2 !2");

  // The three empty 2-D tensors stay distinct.
  Ragged one_empty = Ragged::nest({Ragged::leaf({})}, 2);
  Ragged two_empty = Ragged::nest({Ragged::leaf({}), Ragged::leaf({})}, 2);
  Ragged no_rows = Ragged::nest({}, 2);
  CHECK(print_stream(encode(one_empty)) == "!1 !2");
  CHECK(print_stream(encode(two_empty)) == "!1 !1 !2");
  CHECK(print_stream(encode(no_rows)) == "!2");

  CHECK(print_stream(encode(Ragged::leaf({}))) == "!1");
}

TEST_CASE("decode inverts encode on the worked examples") {
  CHECK(decode(lit("0 1 !1 2 !2"), 2) ==
        Ragged::nest({Ragged::leaf_of({0, 1}), Ragged::leaf_of({2})}, 2));
  CHECK(decode(lit("!1 !1 !2"), 2) ==
        Ragged::nest({Ragged::leaf({}), Ragged::leaf({})}, 2));
  CHECK_THROWS_AS(decode(lit("5 !1"), 2), MalformedStream);
  CHECK_THROWS_AS(decode(lit("!3 !2"), 2), MalformedStream);
  CHECK_THROWS_AS(decode(lit("!2 7 !2"), 2), MalformedStream);
}

TEST_CASE("encode/decode round trip on random ragged tensors") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    int depth = 1 + int(rng() % 5);
    Ragged t = random_ragged(rng, depth, 6);
    Stream s = encode(t);
    CHECK(decode(s, depth) == t);
    // Literal format round trip on the same streams.
    CHECK(parse_stream(print_stream(s)) == s);
  }
}

TEST_CASE("framing") {
  SUBCASE("two elements and a barrier") {
    Stream s = lit("1 2 !1");
    auto v = frame(s, 16);
    CHECK(v.size() == 1);
    auto sc = frame(s, 1);
    CHECK(sc.size() == 2);
    CHECK(sc[0].elems.size() == 1);
    CHECK(!sc[0].barrier);
    CHECK(sc[1].barrier == uint8_t(1));
    CHECK(unframe(v) == s);
    CHECK(unframe(sc) == s);
  }
  SUBCASE("two barriers cost two beats at both widths") {
    Stream s = lit("!1 !2");
    CHECK(frame(s, 16).size() == 2);
    CHECK(frame(s, 1).size() == 2);
  }
  SUBCASE("empty stream frames to zero beats") {
    CHECK(frame({}, 16).empty());
  }
  SUBCASE("round trip on random streams") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
      Ragged t = random_ragged(rng, 3, 5);
      Stream s = encode(t);
      for (int w : {1, 3, 16})
        CHECK(unframe(frame(s, w)) == s);
    }
  }
}

TEST_CASE("elementwise") {
  CHECK(print_stream(eval_ew_binop(BinOp::Add, lit("1 2 !1"),
                                   lit("10 20 !1"))) == "11 22 !1");
  CHECK_THROWS_AS(eval_ew_binop(BinOp::Add, lit("1 !1"), lit("10 20 !1")),
                  AlignmentError);
  TestMemory mem(16);
  Stream voids = eval_ew_store(lit("4 !1"), lit("9 !1"), mem);
  CHECK(print_stream(voids) == "_ !1");
  CHECK(mem.words[4] == 9);
  CHECK(print_stream(eval_ew_load(lit("4 !1"), mem)) == "9 !1");
}

TEST_CASE("counter") {
  CHECK(print_stream(eval_counter(lit("0 !1"), lit("3 !1"), lit("1 !1"))) ==
        "0 1 2 !2");
  // Empty range keeps its iteration slot: one outer element whose inner
  // dimension is empty.
  CHECK(print_stream(eval_counter(lit("5 !1"), lit("5 !1"), lit("1 !1"))) ==
        "!1 !2");
  // Expansion of a two-thread stream: sequence lengths 3 and 4.
  Stream b = eval_counter(lit("0 0 !1"), lit("3 4 !1"), lit("1 1 !1"));
  CHECK(print_stream(b) == "0 1 2 !1 0 1 2 3 !2");
  CHECK_THROWS_AS(eval_counter(lit("0 !1"), lit("3 !1"), lit("0 !1")),
                  TrapError);
}

TEST_CASE("broadcast") {
  CHECK(print_stream(eval_broadcast(lit("7 !1"), lit("1 2 3 !2"))) ==
        "7 7 7 !2");
  CHECK(print_stream(eval_broadcast(lit("7 !1"), lit("!1 !2"))) == "!1 !2");
  // Two-level broadcast pops on the level-2 barrier.
  CHECK(print_stream(eval_broadcast(lit("7 !1"), lit("1 !1 2 !3"), 2)) ==
        "7 !1 7 !3");
  CHECK_THROWS_AS(eval_broadcast(lit("!1"), lit("1 !2")), AlignmentError);
}

TEST_CASE("reduce keeps empty groups distinct") {
  CHECK(print_stream(eval_reduce(RedOp::Add, lit("!1 !2"))) == "0 !1");
  CHECK(print_stream(eval_reduce(RedOp::Add, lit("!1 !1 !2"))) == "0 0 !1");
  CHECK(print_stream(eval_reduce(RedOp::Add, lit("!2"))) == "!1");
  CHECK(print_stream(eval_reduce(RedOp::Add, lit("1 2 3 !2"))) == "6 !1");
  CHECK(print_stream(eval_reduce(RedOp::Add, lit("1 2 !1 3 !2"))) == "3 3 !1");
  CHECK(print_stream(eval_reduce(RedOp::Min, lit("5 1 9 !2"))) == "1 !1");
}

TEST_CASE("flatten") {
  CHECK(print_stream(eval_flatten(lit("0 1 !1 2 !2"))) == "0 1 2 !1");
  CHECK(print_stream(eval_flatten(lit("!1 !2"))) == "!1");
  CHECK(print_stream(eval_flatten(lit("4 9 !3"))) == "4 9 !2");
}

TEST_CASE("filter splits one tensor into two") {
  // Five threads; the predicate picks t3 for the slow path.
  Stream data = lit("1 2 3 4 5 !4");
  Stream pred = lit("0 0 1 0 0 !4");
  FilterResult r = eval_filter(data, pred);
  CHECK(print_stream(r.kept) == "3 !4");
  CHECK(print_stream(r.dropped) == "1 2 4 5 !4");

  FilterResult all = eval_filter(data, lit("1 1 1 1 1 !4"));
  CHECK(all.kept == data);
  CHECK(print_stream(all.dropped) == "!4");

  FilterResult none = eval_filter(lit("!1 !2"), lit("!1 !2"));
  CHECK(print_stream(none.kept) == "!1 !2");
  CHECK(print_stream(none.dropped) == "!1 !2");
}

TEST_CASE("forward merge") {
  // The delayed slow-path thread exits last.
  Stream merged = eval_forward_merge(lit("1 2 4 5 !4"), lit("3 !4"));
  auto segs = segment_multisets(merged, 0);
  CHECK(segs[0] == std::vector<int32_t>{1, 2, 3, 4, 5});
  CHECK(barrier_seq(merged) == std::vector<uint8_t>{4});

  CHECK(print_stream(eval_forward_merge(lit("!1 !1 !2"), lit("7 !1 !1 !2"))) ==
        "7 !1 !1 !2");
  CHECK_THROWS_AS(eval_forward_merge(lit("!1"), lit("!2")), BarrierMismatch);
}

TEST_CASE("forward-backward merge reproduces the loop-trace example") {
  // Iteration counts: t1=2 t2=3 t3=1 t4=3.  Tuples carry (trips, id).
  Stream entry;
  int trips[4] = {2, 3, 1, 4};
  // ids are 1..4; trips for t4 is 3 in the worked example.
  trips[3] = 3;
  for (int i = 0; i < 4; ++i)
    entry.push_back(Token::element(Tuple{Val::of(trips[i]), Val::of(i + 1)}));
  entry.push_back(Token::barrier(4));  // an omega_n with n = 4

  FbResult r = eval_fb_merge(
      entry, [](const std::vector<Tuple>& wave, std::vector<Tuple>* cont,
                std::vector<Tuple>* exit) {
        for (Tuple t : wave) {
          t[0].bits -= 1;
          if (t[0].bits > 0)
            cont->push_back(t);
          else
            exit->push_back(t);
        }
      });

  auto ids = [](const Stream& s) {
    std::string out;
    for (const Token& t : s) {
      if (!out.empty()) out += ' ';
      if (t.is_barrier())
        out += "!" + std::to_string(t.level);
      else
        out += std::to_string(t.elems[1].bits);
    }
    return out;
  };
  CHECK(ids(r.body_in) == "1 2 3 4 !1 1 2 4 !1 2 4 !1 !5");
  CHECK(ids(r.backedge) == "1 2 4 !1 2 4 !1 !1");
  CHECK(ids(r.exit) == "3 1 2 4 !4");
}

TEST_CASE("forward-backward merge edge cases") {
  auto body_dec = [](const std::vector<Tuple>& wave, std::vector<Tuple>* cont,
                     std::vector<Tuple>* exit) {
    for (Tuple t : wave) {
      t[0].bits -= 1;
      if (t[0].bits > 0)
        cont->push_back(t);
      else
        exit->push_back(t);
    }
  };
  SUBCASE("empty entry segment exits immediately with zero body elements") {
    FbResult r = eval_fb_merge(lit("!3"), body_dec);
    CHECK(print_stream(r.exit) == "!3");
    for (const Token& t : r.body_in) CHECK(t.is_barrier());
  }
  SUBCASE("all trip counts one preserve entry order") {
    FbResult r = eval_fb_merge(lit("1 1 1 !1"), body_dec);
    CHECK(print_stream(r.exit) == "0 0 0 !1");
    auto segs = segment_multisets(r.exit, 0);
    CHECK(segs[0].size() == 3);
  }
}

TEST_CASE("random primitive networks conserve barriers and segments") {
  std::mt19937_64 rng(99);
  int nets = 0;
  for (int iter = 0; iter < 300; ++iter) {
    // Input: depth-2 stream of (value, uid) tuples.
    Ragged shape = random_ragged(rng, 2, 5);
    Stream in;
    int uid = 0;
    for (const Token& t : encode(shape)) {
      if (t.is_barrier())
        in.push_back(t);
      else
        in.push_back(Token::element(
            Tuple{Val::of(1 + int32_t(rng() % 5)), Val::of(uid++)}));
    }
    Network net;
    int last = -1;
    int n = 1 + int(rng() % 4);
    for (int i = 0; i < n; ++i) {
      PrimitiveNode node;
      switch (rng() % 4) {
        case 0: node.kind = PrimitiveNode::Kind::Elementwise; break;
        case 1: node.kind = PrimitiveNode::Kind::FbLoop; break;
        case 2: {
          // filter then re-merge both halves
          node.kind = PrimitiveNode::Kind::Filter;
          node.ins = {last};
          net.nodes.push_back(node);
          PrimitiveNode m;
          m.kind = PrimitiveNode::Kind::ForwardMerge;
          m.ins = {int(net.nodes.size()) - 1, int(net.nodes.size()) - 1 + 10000};
          net.nodes.push_back(m);
          last = int(net.nodes.size()) - 1;
          continue;
        }
        default: node.kind = PrimitiveNode::Kind::Elementwise; break;
      }
      node.ins = {last};
      net.nodes.push_back(node);
      last = int(net.nodes.size()) - 1;
    }
    Stream inputs[1] = {in};
    CHECK_NOTHROW(eval_network(net, inputs, /*audit=*/true));
    ++nets;
  }
  CHECK(nets == 300);
}
