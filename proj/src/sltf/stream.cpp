#include "weft/sltf/stream.hpp"

#include <sstream>

namespace weft::sltf {

bool Ragged::operator==(const Ragged& o) const {
  if (depth != o.depth) return false;
  return depth == 1 ? elems == o.elems : kids == o.kids;
}

namespace {

// Emits one group's tokens without its own closing barrier.  A non-last
// child's end is always explicit; a last child's end is subsumed by the
// caller's barrier unless the child group is empty.
void encode_group(const Ragged& g, std::vector<Token>& out) {
  if (g.depth == 1) {
    for (const Tuple& e : g.elems) out.push_back(Token::element(e));
    return;
  }
  for (size_t i = 0; i < g.kids.size(); ++i) {
    const Ragged& kid = g.kids[i];
    encode_group(kid, out);
    bool last = i + 1 == g.kids.size();
    if (!last || kid.empty_group())
      out.push_back(Token::barrier(g.depth - 1));
  }
}

}  // namespace

Stream encode(const Ragged& t) {
  if (t.depth < 1 || t.depth > kMaxBarrierLevel)
    throw MalformedStream("tensor depth out of range");
  Stream out;
  encode_group(t, out);
  out.push_back(Token::barrier(t.depth));
  return out;
}

Ragged decode(const Stream& s, int depth) {
  if (depth < 1 || depth > kMaxBarrierLevel)
    throw MalformedStream("decode depth out of range");
  // open[j] = group being assembled at dimension j+1.
  std::vector<Ragged> open(depth);
  for (int j = 0; j < depth; ++j) open[j].depth = j + 1;
  bool done = false;
  for (const Token& t : s) {
    if (done) throw MalformedStream("tokens after stream terminator");
    if (t.is_elem()) {
      open[0].elems.push_back(t.elems);
      continue;
    }
    if (t.level < 1 || t.level > depth)
      throw MalformedStream("barrier level " + std::to_string(t.level) +
                            " exceeds stream depth " + std::to_string(depth));
    // A barrier of level m closes nonempty dimensions below m implicitly
    // and dimension m itself unconditionally.
    for (int j = 1; j < t.level; ++j) {
      if (!open[j - 1].empty_group()) {
        open[j].kids.push_back(std::move(open[j - 1]));
        open[j - 1] = Ragged{};
        open[j - 1].depth = j;
      }
    }
    if (t.level == depth) {
      done = true;
    } else {
      open[t.level].kids.push_back(std::move(open[t.level - 1]));
      open[t.level - 1] = Ragged{};
      open[t.level - 1].depth = t.level;
    }
  }
  if (!done) throw MalformedStream("stream missing terminating barrier");
  return std::move(open[depth - 1]);
}

void check_wellformed(const Stream& s, int depth) {
  (void)decode(s, depth);
}

std::vector<Beat> frame(const Stream& s, int width) {
  if (width < 1) throw MalformedStream("frame width must be positive");
  std::vector<Beat> out;
  Beat cur;
  auto flush = [&] {
    if (!cur.elems.empty() || cur.barrier) {
      out.push_back(std::move(cur));
      cur = Beat{};
    }
  };
  for (const Token& t : s) {
    if (t.is_elem()) {
      if (static_cast<int>(cur.elems.size()) == width) flush();
      cur.elems.push_back(t.elems);
    } else {
      cur.barrier = t.level;
      flush();
    }
  }
  flush();
  return out;
}

Stream unframe(const std::vector<Beat>& beats) {
  Stream out;
  for (const Beat& b : beats) {
    for (const Tuple& e : b.elems) out.push_back(Token::element(e));
    if (b.barrier) out.push_back(Token::barrier(*b.barrier));
  }
  return out;
}

Stream parse_stream(const std::string& text) {
  Stream out;
  std::istringstream in(text);
  std::string w;
  auto parse_val = [](const std::string& v) -> Val {
    if (v == "_") return Val::void_val();
    return Val::of(static_cast<int32_t>(std::stol(v)));
  };
  while (in >> w) {
    if (w[0] == '!') {
      out.push_back(Token::barrier(std::stoi(w.substr(1))));
    } else if (w[0] == '(') {
      Tuple t;
      std::string body = w.substr(1, w.size() - 2);
      std::istringstream bs(body);
      std::string f;
      while (std::getline(bs, f, ',')) t.push_back(parse_val(f));
      out.push_back(Token::element(std::move(t)));
    } else {
      out.push_back(Token::element(Tuple{parse_val(w)}));
    }
  }
  return out;
}

std::string print_stream(const Stream& s) {
  std::string out;
  auto print_val = [&](const Val& v) {
    if (v.is_void)
      out += '_';
    else
      out += std::to_string(v.bits);
  };
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    const Token& t = s[i];
    if (t.is_barrier()) {
      out += '!';
      out += std::to_string(t.level);
    } else if (t.elems.size() == 1) {
      print_val(t.elems[0]);
    } else {
      out += '(';
      for (size_t j = 0; j < t.elems.size(); ++j) {
        if (j) out += ',';
        print_val(t.elems[j]);
      }
      out += ')';
    }
  }
  return out;
}

}  // namespace weft::sltf
