#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "polyrel/linalg.hpp"
#include "polyrel/rational.hpp"

namespace polyrel {

struct ArityError : Error {
  using Error::Error;
};

struct FragmentError : Error {
  using Error::Error;
};

enum class GenKind {
  Copy,      // 1 -> 2
  Delete,    // 1 -> 0
  Add,       // 2 -> 1
  Zero,      // 0 -> 1
  Scalar,    // 1 -> 1, carries k
  CoCopy,    // 2 -> 1
  CoDelete,  // 0 -> 1
  CoAdd,     // 1 -> 2
  CoZero,    // 1 -> 0
  CoScalar,  // 1 -> 1, carries k
  Geq,       // 1 -> 1
  One,       // 0 -> 1
  Register,  // 1 -> 1, stateful
};

struct Generator {
  GenKind kind;
  Rational scalar;  // only for Scalar / CoScalar
};

// Fragments of the calculus, by generating signature. The two matrix
// fragments sit side by side under the full signature chain.
enum class Fragment { CircRight, CircLeft, Circ, CircGeq, ACircGeq, SPP };

inline int fragment_level(Fragment f) {
  switch (f) {
    case Fragment::CircRight:
    case Fragment::CircLeft: return 1;
    case Fragment::Circ: return 2;
    case Fragment::CircGeq: return 3;
    case Fragment::ACircGeq: return 4;
    case Fragment::SPP: return 5;
  }
  return 0;
}

inline bool fragment_leq(Fragment a, Fragment b) {
  return a == b || fragment_level(a) < fragment_level(b);
}

inline const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::CircRight: return "CircRight";
    case Fragment::CircLeft: return "CircLeft";
    case Fragment::Circ: return "Circ";
    case Fragment::CircGeq: return "CircGeq";
    case Fragment::ACircGeq: return "ACircGeq";
    case Fragment::SPP: return "SPP";
  }
  return "?";
}

// Immutable term of the free prop: generators, identities, block symmetries,
// sequential and parallel composition. Arities and signature usage are cached
// bottom-up; ill-typed compositions are representable and reported by
// validate() with the offending path.
class Diagram {
 public:
  enum class Tag { Gen, Id, Sym, Seq, Tensor };

  struct Node {
    Tag tag;
    Generator gen{GenKind::Copy, Rational(0)};
    std::size_t a = 0, b = 0;  // Id(a); Sym(a, b)
    std::shared_ptr<const Node> first, second;  // Seq / Tensor children
    bool ok = true;
    std::size_t dom = 0, cod = 0;
    std::uint8_t flags = 0;
  };

  Diagram() : Diagram(identity(0)) {}

  static constexpr std::uint8_t kRight = 1, kLeft = 2, kGeq = 4, kOne = 8, kReg = 16;

  static Diagram generator(Generator g) {
    Node n;
    n.tag = Tag::Gen;
    n.gen = std::move(g);
    switch (n.gen.kind) {
      case GenKind::Copy: n.dom = 1; n.cod = 2; n.flags = kRight; break;
      case GenKind::Delete: n.dom = 1; n.cod = 0; n.flags = kRight; break;
      case GenKind::Add: n.dom = 2; n.cod = 1; n.flags = kRight; break;
      case GenKind::Zero: n.dom = 0; n.cod = 1; n.flags = kRight; break;
      case GenKind::Scalar: n.dom = 1; n.cod = 1; n.flags = kRight; break;
      case GenKind::CoCopy: n.dom = 2; n.cod = 1; n.flags = kLeft; break;
      case GenKind::CoDelete: n.dom = 0; n.cod = 1; n.flags = kLeft; break;
      case GenKind::CoAdd: n.dom = 1; n.cod = 2; n.flags = kLeft; break;
      case GenKind::CoZero: n.dom = 1; n.cod = 0; n.flags = kLeft; break;
      case GenKind::CoScalar: n.dom = 1; n.cod = 1; n.flags = kLeft; break;
      case GenKind::Geq: n.dom = 1; n.cod = 1; n.flags = kGeq; break;
      case GenKind::One: n.dom = 0; n.cod = 1; n.flags = kOne; break;
      case GenKind::Register: n.dom = 1; n.cod = 1; n.flags = kReg; break;
    }
    return Diagram(std::move(n));
  }

  static Diagram identity(std::size_t k) {
    Node n;
    n.tag = Tag::Id;
    n.a = k;
    n.dom = n.cod = k;
    return Diagram(std::move(n));
  }

  static Diagram symmetry(std::size_t a, std::size_t b) {
    if (a == 0) return identity(b);
    if (b == 0) return identity(a);
    Node n;
    n.tag = Tag::Sym;
    n.a = a;
    n.b = b;
    n.dom = n.cod = a + b;
    return Diagram(std::move(n));
  }

  static Diagram sequence(Diagram f, Diagram s) {
    if (f.node_->ok && s.node_->ok && f.node_->cod == s.node_->dom) {
      if (f.node_->tag == Tag::Id) return s;
      if (s.node_->tag == Tag::Id) return f;
    }
    Node n;
    n.tag = Tag::Seq;
    n.ok = f.node_->ok && s.node_->ok && f.node_->cod == s.node_->dom;
    n.dom = f.node_->dom;
    n.cod = s.node_->cod;
    n.flags = f.node_->flags | s.node_->flags;
    n.first = std::move(f.node_);
    n.second = std::move(s.node_);
    return Diagram(std::move(n));
  }

  static Diagram parallel(Diagram t, Diagram b) {
    if (t.node_->tag == Tag::Id && t.node_->a == 0) return b;
    if (b.node_->tag == Tag::Id && b.node_->a == 0) return t;
    if (t.node_->tag == Tag::Id && b.node_->tag == Tag::Id)
      return identity(t.node_->a + b.node_->a);
    Node n;
    n.tag = Tag::Tensor;
    n.ok = t.node_->ok && b.node_->ok;
    n.dom = t.node_->dom + b.node_->dom;
    n.cod = t.node_->cod + b.node_->cod;
    n.flags = t.node_->flags | b.node_->flags;
    n.first = std::move(t.node_);
    n.second = std::move(b.node_);
    return Diagram(std::move(n));
  }

  Tag tag() const { return node_->tag; }
  const Generator& gen() const { return node_->gen; }
  std::size_t id_width() const { return node_->a; }
  std::size_t sym_top() const { return node_->a; }
  std::size_t sym_bottom() const { return node_->b; }
  Diagram first() const { return Diagram(node_->first); }
  Diagram second() const { return Diagram(node_->second); }
  std::uint8_t flags() const { return node_->flags; }
  bool well_typed() const { return node_->ok; }
  std::size_t dom() const { return node_->dom; }
  std::size_t cod() const { return node_->cod; }

 private:
  explicit Diagram(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  explicit Diagram(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Convenience builders.
inline Diagram gen(GenKind k) { return Diagram::generator(Generator{k, Rational(0)}); }
inline Diagram scalar(Rational k) { return Diagram::generator(Generator{GenKind::Scalar, std::move(k)}); }
inline Diagram coscalar(Rational k) { return Diagram::generator(Generator{GenKind::CoScalar, std::move(k)}); }
inline Diagram id(std::size_t n) { return Diagram::identity(n); }
inline Diagram sym(std::size_t n, std::size_t m) { return Diagram::symmetry(n, m); }
inline Diagram seq(Diagram a, Diagram b) { return Diagram::sequence(std::move(a), std::move(b)); }
template <typename... Rest>
inline Diagram seq(Diagram a, Diagram b, Rest... rest) {
  return seq(seq(std::move(a), std::move(b)), std::move(rest)...);
}
inline Diagram tensor(Diagram a, Diagram b) { return Diagram::parallel(std::move(a), std::move(b)); }
template <typename... Rest>
inline Diagram tensor(Diagram a, Diagram b, Rest... rest) {
  return tensor(tensor(std::move(a), std::move(b)), std::move(rest)...);
}
inline Diagram tensor_power(const Diagram& d, std::size_t k) {
  Diagram out = id(0);
  for (std::size_t i = 0; i < k; ++i) out = tensor(out, d);
  return out;
}

struct Validated {
  std::size_t dom = 0;
  std::size_t cod = 0;
  Fragment frag = Fragment::CircRight;
};

inline Fragment fragment_of_flags(std::uint8_t f) {
  if (f & Diagram::kReg) return Fragment::SPP;
  if (f & Diagram::kOne) return Fragment::ACircGeq;
  if (f & Diagram::kGeq) return Fragment::CircGeq;
  bool r = f & Diagram::kRight, l = f & Diagram::kLeft;
  if (r && l) return Fragment::Circ;
  if (l) return Fragment::CircLeft;
  return Fragment::CircRight;
}

namespace detail {

inline void find_arity_fault(const Diagram& d, std::string path) {
  if (d.well_typed()) return;
  if (d.tag() == Diagram::Tag::Seq || d.tag() == Diagram::Tag::Tensor) {
    const char* names[2] = {d.tag() == Diagram::Tag::Seq ? "left" : "top",
                            d.tag() == Diagram::Tag::Seq ? "right" : "bottom"};
    if (!d.first().well_typed())
      find_arity_fault(d.first(), path.empty() ? names[0] : path + "." + names[0]);
    if (!d.second().well_typed())
      find_arity_fault(d.second(), path.empty() ? names[1] : path + "." + names[1]);
    if (d.tag() == Diagram::Tag::Seq)
      throw ArityError("arity mismatch at '" + (path.empty() ? std::string("<root>") : path) +
                       "': left codomain " + std::to_string(d.first().cod()) +
                       " != right domain " + std::to_string(d.second().dom()));
  }
}

}  // namespace detail

// Arity check: domain/codomain and the smallest fragment containing every
// generator used. Ill-typed sequential compositions are reported with the
// path of the offending subterm.
inline Validated validate(const Diagram& d) {
  if (!d.well_typed()) detail::find_arity_fault(d, "");
  return Validated{d.dom(), d.cod(), fragment_of_flags(d.flags())};
}

inline void require_fragment(const Diagram& d, Fragment max, const char* what) {
  Validated v = validate(d);
  if (!fragment_leq(v.frag, max))
    throw FragmentError(std::string(what) + ": diagram lies in " + fragment_name(v.frag) +
                        ", needs " + fragment_name(max));
}

// Arbitrary wire permutation: wire i of the input ends at position perm[i].
// Realized as odd-even transposition layers, so the term depth stays linear
// in the wire count.
inline Diagram perm_to_diagram(const std::vector<std::size_t>& perm) {
  std::size_t k = perm.size();
  std::vector<std::size_t> cur = perm;
  Diagram out = id(k);
  for (std::size_t pass = 0; pass < k; ++pass) {
    std::vector<bool> swap_at(k, false);
    bool any = false;
    for (std::size_t j = pass % 2; j + 1 < k; j += 2) {
      if (cur[j] > cur[j + 1]) {
        std::swap(cur[j], cur[j + 1]);
        swap_at[j] = true;
        any = true;
      }
    }
    if (!any) continue;
    Diagram layer = id(0);
    for (std::size_t j = 0; j < k;) {
      if (swap_at[j]) {
        layer = tensor(layer, sym(1, 1));
        j += 2;
      } else {
        layer = tensor(layer, id(1));
        j += 1;
      }
    }
    out = seq(out, layer);
  }
  return out;
}

enum class WiringKind { Cup, Cap, Id, Sym };

// The n-fold cup 0 -> 2n forcing its two port blocks equal, the n-fold cap
// 2n -> 0, identities and block symmetries, built recursively from the
// one-wire cases.
inline Diagram build_wiring(WiringKind kind, std::size_t n, std::size_t m = 0) {
  switch (kind) {
    case WiringKind::Id: return id(n);
    case WiringKind::Sym: return sym(n, m);
    case WiringKind::Cup: {
      Diagram cup = id(0);
      for (std::size_t k = 0; k < n; ++k) {
        Diagram cup1 = seq(gen(GenKind::CoDelete), gen(GenKind::Copy));
        cup = seq(tensor(cup, cup1), tensor(id(k), sym(k, 1), id(1)));
      }
      return cup;
    }
    case WiringKind::Cap: {
      Diagram cap = id(0);
      for (std::size_t k = 0; k < n; ++k) {
        Diagram cap1 = seq(gen(GenKind::CoCopy), gen(GenKind::Delete));
        cap = seq(tensor(id(k), sym(1, k), id(1)), tensor(cap, cap1));
      }
      return cap;
    }
  }
  throw Error("build_wiring: unknown kind");
}

inline Diagram cup(std::size_t n) { return build_wiring(WiringKind::Cup, n); }
inline Diagram cap(std::size_t n) { return build_wiring(WiringKind::Cap, n); }

// Wide (bus) versions of the basic generators, acting blockwise.
inline Diagram copy_block(std::size_t p) {
  Diagram out = id(0);
  for (std::size_t k = 0; k < p; ++k)
    out = seq(tensor(out, gen(GenKind::Copy)), tensor(id(k), sym(k, 1), id(1)));
  return out;
}

inline Diagram cocopy_block(std::size_t p) {
  Diagram out = id(0);
  for (std::size_t k = 0; k < p; ++k)
    out = seq(tensor(id(k), sym(1, k), id(1)), tensor(out, gen(GenKind::CoCopy)));
  return out;
}

inline Diagram add_block(std::size_t p) {
  Diagram out = id(0);
  for (std::size_t k = 0; k < p; ++k)
    out = seq(tensor(id(k), sym(1, k), id(1)), tensor(out, gen(GenKind::Add)));
  return out;
}

inline Diagram coadd_block(std::size_t p) {
  Diagram out = id(0);
  for (std::size_t k = 0; k < p; ++k)
    out = seq(tensor(out, gen(GenKind::CoAdd)), tensor(id(k), sym(k, 1), id(1)));
  return out;
}

// Fan trees on a single wire.
inline Diagram copy_tree(std::size_t m) {
  if (m == 0) return gen(GenKind::Delete);
  Diagram out = id(1);
  for (std::size_t k = 1; k < m; ++k) out = seq(gen(GenKind::Copy), tensor(out, id(1)));
  return out;
}

inline Diagram add_tree(std::size_t n) {
  if (n == 0) return gen(GenKind::Zero);
  Diagram out = id(1);
  for (std::size_t k = 1; k < n; ++k) out = seq(tensor(out, id(1)), gen(GenKind::Add));
  return out;
}

inline Diagram coadd_tree(std::size_t m) {
  if (m == 0) return gen(GenKind::CoZero);
  Diagram out = id(1);
  for (std::size_t k = 1; k < m; ++k) out = seq(gen(GenKind::CoAdd), tensor(out, id(1)));
  return out;
}

inline Diagram cocopy_tree(std::size_t n) {
  if (n == 0) return gen(GenKind::CoDelete);
  Diagram out = id(1);
  for (std::size_t k = 1; k < n; ++k) out = seq(tensor(out, id(1)), gen(GenKind::CoCopy));
  return out;
}

// The wire that also asserts its value is nonnegative: {(x, x) | x >= 0}.
// Doubles as the polar image of the order generator.
inline Diagram nonneg_wire() {
  return seq(gen(GenKind::Copy),
             tensor(seq(gen(GenKind::Geq), gen(GenKind::CoZero)), id(1)));
}

// {(x, x) | x <= k}: pins a constant k alongside the wire and discharges the
// comparison through a cap.
inline Diagram upper_bound_wire(const Rational& k);

// {(a, b) | a <= b}: the order generator seen through the compact closure.
inline Diagram leq_wire();

// Compact-closed transpose: semantics is the converse relation.
inline Diagram opposite(const Diagram& d) {
  require_fragment(d, Fragment::ACircGeq, "opposite");
  Validated v = validate(d);
  std::size_t n = v.dom, m = v.cod;
  return seq(tensor(cup(n), id(m)), tensor(id(n), d, id(m)), tensor(id(n), cap(m)));
}

inline Diagram leq_wire() { return opposite(gen(GenKind::Geq)); }

inline Diagram upper_bound_wire(const Rational& k) {
  Diagram constant = k == 1 ? gen(GenKind::One) : seq(gen(GenKind::One), scalar(k));
  Diagram discharge = seq(tensor(constant, id(1)), tensor(gen(GenKind::Geq), id(1)), cap(1));
  return seq(gen(GenKind::Copy), tensor(discharge, id(1)));
}

// Structural polar: swaps the two monoid/comonoid structures, fixes scalars'
// mirror images, and sends the order generator to the nonnegative wire.
inline Diagram polar_syntactic(const Diagram& d) {
  require_fragment(d, Fragment::CircGeq, "polar");
  switch (d.tag()) {
    case Diagram::Tag::Gen:
      switch (d.gen().kind) {
        case GenKind::Copy: return gen(GenKind::CoAdd);
        case GenKind::Delete: return gen(GenKind::CoZero);
        case GenKind::Add: return gen(GenKind::CoCopy);
        case GenKind::Zero: return gen(GenKind::CoDelete);
        case GenKind::Scalar: return coscalar(d.gen().scalar);
        case GenKind::CoAdd: return gen(GenKind::Copy);
        case GenKind::CoZero: return gen(GenKind::Delete);
        case GenKind::CoCopy: return gen(GenKind::Add);
        case GenKind::CoDelete: return gen(GenKind::Zero);
        case GenKind::CoScalar: return scalar(d.gen().scalar);
        case GenKind::Geq: return nonneg_wire();
        default: throw FragmentError("polar: generator outside CircGeq");
      }
    case Diagram::Tag::Id: return d;
    case Diagram::Tag::Sym: return d;
    case Diagram::Tag::Seq: return seq(polar_syntactic(d.first()), polar_syntactic(d.second()));
    case Diagram::Tag::Tensor:
      return tensor(polar_syntactic(d.first()), polar_syntactic(d.second()));
  }
  throw Error("polar: unreachable");
}

namespace detail {

// Left-right reflection of matrix-fragment terms: each generator is replaced
// by its co-version and sequential order reverses. Semantics is the converse.
inline Diagram mirror(const Diagram& d) {
  switch (d.tag()) {
    case Diagram::Tag::Gen:
      switch (d.gen().kind) {
        case GenKind::Copy: return gen(GenKind::CoCopy);
        case GenKind::Delete: return gen(GenKind::CoDelete);
        case GenKind::Add: return gen(GenKind::CoAdd);
        case GenKind::Zero: return gen(GenKind::CoZero);
        case GenKind::Scalar: return coscalar(d.gen().scalar);
        case GenKind::CoCopy: return gen(GenKind::Copy);
        case GenKind::CoDelete: return gen(GenKind::Delete);
        case GenKind::CoAdd: return gen(GenKind::Add);
        case GenKind::CoZero: return gen(GenKind::Zero);
        case GenKind::CoScalar: return scalar(d.gen().scalar);
        default: throw FragmentError("mirror: generator outside the matrix fragments");
      }
    case Diagram::Tag::Id: return d;
    case Diagram::Tag::Sym: return sym(d.sym_bottom(), d.sym_top());
    case Diagram::Tag::Seq: return seq(mirror(d.second()), mirror(d.first()));
    case Diagram::Tag::Tensor: return tensor(mirror(d.first()), mirror(d.second()));
  }
  throw Error("mirror: unreachable");
}

inline Diagram scalar_wire(const Rational& k) { return k == 1 ? id(1) : scalar(k); }

}  // namespace detail

enum class MatrixSide { Right, Left };

// Matrix as a circuit. Right: a CircRight diagram cols -> rows relating input
// x to output A x, with entry k the scalar on the path from input j to output
// i. Left: the mirrored CircLeft diagram rows -> cols relating left boundary
// A x to right boundary x.
inline Diagram diagram_of_matrix(const QMatrix& a, MatrixSide side = MatrixSide::Right) {
  std::size_t n = a.cols, m = a.rows;
  Diagram fanout = id(0);
  for (std::size_t j = 0; j < n; ++j) fanout = tensor(fanout, copy_tree(m));
  Diagram scalars = id(0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) scalars = tensor(scalars, detail::scalar_wire(a.at(i, j)));
  std::vector<std::size_t> perm(n * m);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) perm[j * m + i] = i * n + j;
  Diagram shuffle = perm_to_diagram(perm);
  Diagram fanin = id(0);
  for (std::size_t i = 0; i < m; ++i) fanin = tensor(fanin, add_tree(n));
  Diagram right = seq(fanout, scalars, shuffle, fanin);
  return side == MatrixSide::Right ? right : detail::mirror(right);
}

// Derived lattice operations on hom-sets.
inline Diagram intersect(const Diagram& c, const Diagram& d) {
  Validated vc = validate(c), vd = validate(d);
  if (vc.dom != vd.dom || vc.cod != vd.cod) throw ArityError("intersect: arity mismatch");
  return seq(copy_block(vc.dom), tensor(c, d), cocopy_block(vc.cod));
}

inline Diagram top_diagram(std::size_t n, std::size_t m) {
  return seq(tensor_power(gen(GenKind::Delete), n), tensor_power(gen(GenKind::CoDelete), m));
}

// one ; cozero, the empty relation 0 -> 0.
inline Diagram false_gadget() { return seq(gen(GenKind::One), gen(GenKind::CoZero)); }

}  // namespace polyrel
