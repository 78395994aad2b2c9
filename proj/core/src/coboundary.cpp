#include "koszulhh/coboundary.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace koszulhh {

Word right_translate(const Alphabet& alphabet, const Word& w) {
  if (w.empty() || alphabet.is_stable(w)) return w;
  Word out;
  out.reserve(w.size());
  out.push_back(w.back());
  out.insert(out.end(), w.begin(), w.end() - 1);
  return out;
}

Word left_translate(const Alphabet& alphabet, const Word& w) {
  if (w.empty() || alphabet.is_stable(w)) return w;
  Word out(w.begin() + 1, w.end());
  out.push_back(w.front());
  return out;
}

Word left_truncate(const Word& w) {
  if (w.empty()) throw std::invalid_argument("cannot truncate the empty word");
  return Word(w.begin(), w.end() - 1);
}

Word right_truncate(const Word& w) {
  if (w.empty()) throw std::invalid_argument("cannot truncate the empty word");
  return Word(w.begin() + 1, w.end());
}

std::vector<Orbit> orbit_decomposition(const Alphabet& alphabet, int k, const ResourceCaps& caps) {
  if (k < 1) throw std::invalid_argument("orbit_decomposition: k must be at least 1");
  const auto basis = admissible_sequences(alphabet, k, caps);
  std::vector<char> seen(basis.size(), 0);
  std::vector<Orbit> orbits;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (seen[i]) continue;
    Orbit orbit;
    Word w = basis.word(i);
    do {
      seen[*basis.find(w)] = 1;
      orbit.members.push_back(w);
      w = right_translate(alphabet, w);
    } while (w != orbit.members.front());
    orbit.stable = alphabet.is_stable(orbit.members.front());
    orbit.fixed_unstable = !orbit.stable && orbit.members.size() == 1;
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<Word> truncation_set(const Orbit& orbit) {
  if (orbit.stable) throw std::invalid_argument("truncation_set: the orbit is stable");
  std::vector<Word> out;
  for (const auto& w : orbit.members) out.push_back(left_truncate(w));
  return out;
}

BitVector letter_projection(const CoefficientPair& pair, Letter t) {
  const auto n = pair.module().atom_count();
  if (t < pair.v_dim()) return BitVector(n);
  return pair.subring().block_element(t - pair.v_dim());
}

BitVector boolean_value(const CoefficientPair& pair, const Cochain& f, std::size_t w) {
  const int j = f.value_degree();
  if (j < 1) throw std::invalid_argument("boolean_value: values of degree 0 have no B-part");
  const auto& mod = pair.module();
  return f.coords.slice(w * f.value_dim + mod.atom_offset(j), mod.atom_count());
}

HeadTail head_tail(const CoefficientPair& pair, const Cochain& f, std::size_t word) {
  const auto alphabet = pair.alphabet();
  const Word& t = f.basis->word(word);
  const auto value = boolean_value(pair, f, word);
  const auto p1 = letter_projection(pair, t.front());
  const auto pk = letter_projection(pair, t.back());
  if ((value & ~(p1 | pk)).any()) {
    throw NotACocycle("value at (" + alphabet.format(t) + ") is not in the ideal (p(t_1), p(t_k))");
  }
  if (alphabet.is_stable(t)) return {value, value};
  if (value.empty()) return {value, value};
  const BooleanRing ring(value.size());
  auto [alpha, beta] = ideal_decompose(ring, value, p1, pk);
  return {std::move(alpha), std::move(beta)};
}

std::vector<HeadTail> head_tail(const CoefficientPair& pair, const Cochain& f, const Orbit& orbit) {
  std::vector<HeadTail> out;
  for (const auto& w : orbit.members) {
    const auto idx = f.basis->find(w);
    if (!idx) throw std::invalid_argument("head_tail: orbit word is not in the cochain's basis");
    out.push_back(head_tail(pair, f, *idx));
  }
  return out;
}

long first_cocycle_violation(const CoefficientPair& pair, const Cochain& f, const ResourceCaps& caps) {
  const auto df = apply_differential(pair, f, caps);
  const auto first = df.coords.first_set();
  if (!first) return -1;
  return static_cast<long>(*first / df.value_dim);
}

namespace {

void require_cocycle(const CoefficientPair& pair, const Cochain& f, const ResourceCaps& caps) {
  const auto bad = first_cocycle_violation(pair, f, caps);
  if (bad < 0) return;
  const auto next = admissible_sequences(pair.alphabet(), f.k + 1, caps);
  const Word& w = next.word(static_cast<std::size_t>(bad));
  throw NotACocycle("not a cocycle: t_1 f(t_2..) + f(..t_k) t_{k+1} != 0 at (" + pair.alphabet().format(w) + ")");
}

void add_boolean_value(const CoefficientPair& pair, Cochain& g, std::size_t w, const BitVector& b) {
  const auto off = w * g.value_dim + pair.module().atom_offset(g.value_degree());
  for (auto i : b.support()) g.coords.flip(off + i);
}

}  // namespace

Cochain solve_coboundary(const CoefficientPair& pair, const Cochain& f, const ResourceCaps& caps) {
  if (f.k < 2) throw std::invalid_argument("solve_coboundary: needs k >= 2");
  if (f.value_degree() < 2) throw std::invalid_argument("solve_coboundary: needs j = k + s >= 2");
  require_cocycle(pair, f, caps);

  const auto alphabet = pair.alphabet();
  auto g = zero_cochain(pair, f.k - 1, f.s, caps);
  std::vector<HeadTail> ht;
  ht.reserve(f.word_count());
  for (std::size_t w = 0; w < f.word_count(); ++w) ht.push_back(head_tail(pair, f, w));

  for (std::size_t w = 0; w < f.word_count(); ++w) {
    const Word& t = f.basis->word(w);
    // g(r(t)) = α(t) p(t_1)^{j-1}; with B_{j-1} identified with B the power is p(t_1).
    const auto p1 = letter_projection(pair, t.front());
    const auto contribution = ht[w].alpha & p1;
    if (!alphabet.is_stable(t)) {
      // The same value read from the other side of the truncation set.
      const auto left = *f.basis->find(left_translate(alphabet, t));
      if ((ht[left].beta & p1) != contribution) {
        throw std::logic_error("solve_coboundary: head and tail values disagree across the truncation set");
      }
    }
    if (contribution.any()) add_boolean_value(pair, g, *g.basis->find(right_truncate(t)), contribution);
  }

  if (apply_differential(pair, g, caps).coords != f.coords) {
    throw std::logic_error("solve_coboundary: constructed primitive does not satisfy dg = f");
  }
  return g;
}

// ---------------------------------------------------------------- extension

SubringExtension::SubringExtension(const Subring& base, const BitVector& preferred)
    : base_(base), extended_(adjoin(base, preferred)) {
  parent_.resize(extended_.block_count());
  children_.resize(base_.block_count());
  for (std::size_t c = 0; c < extended_.block_count(); ++c) {
    parent_[c] = base_.block_of(extended_.blocks()[c].front());
    children_[parent_[c]].push_back(c);
  }
  section_.resize(base_.block_count());
  for (std::size_t p = 0; p < base_.block_count(); ++p) {
    const auto& kids = children_[p];
    section_[p] = kids.front();
    if (kids.size() > 1) {
      for (auto c : kids) {
        if (preferred.test(extended_.blocks()[c].front())) section_[p] = c;
      }
    }
  }
}

Word SubringExtension::project(const Alphabet& big, const Word& w) const {
  Word out(w);
  for (auto& t : out) {
    if (big.is_atom(t)) t = static_cast<Letter>(big.v_dim + parent_[big.atom_index(t)]);
  }
  return out;
}

Word SubringExtension::lift(const Alphabet& small, const Word& w) const {
  Word out(w);
  for (auto& t : out) {
    if (small.is_atom(t)) t = static_cast<Letter>(small.v_dim + section_[small.atom_index(t)]);
  }
  return out;
}

bool SubringExtension::is_x_admissible(const Alphabet& big, const Word& w) const {
  const Alphabet small(big.v_dim, base_.block_count());
  return big.is_admissible(w) && lift(small, project(big, w)) == w;
}

namespace {

// f_x(t) = f(a*(t)) on x-admissible words, 0 elsewhere; accumulated into out.
void lift_values(const SubringExtension& ext, const CoefficientPair& big, const Cochain& f, Cochain& out) {
  const auto big_alphabet = big.alphabet();
  for (std::size_t u = 0; u < out.word_count(); ++u) {
    const Word& w = out.basis->word(u);
    if (!ext.is_x_admissible(big_alphabet, w)) continue;
    const auto idx = f.basis->find(ext.project(big_alphabet, w));
    if (!idx) throw std::logic_error("extend_cocycle: projection of an x-admissible word is not admissible");
    const auto v = f.value(*idx);
    for (auto i : v.support()) out.coords.flip(u * out.value_dim + i);
  }
}

void check_bottom_row(const Cochain& f) {
  if (f.k < 2) throw std::invalid_argument("extend_cocycle: needs k >= 2");
  if (f.s != 1 - f.k) throw std::invalid_argument("extend_cocycle: needs bidegree (k, 1 - k)");
}

}  // namespace

ExtensionResult extend_cocycle(const CoefficientPair& pair, const BitVector& x, const Cochain& f,
                               const ResourceCaps& caps) {
  check_bottom_row(f);
  const auto n = pair.module().atom_count();
  if (x.size() != n) throw std::invalid_argument("extend_cocycle: x is not an element of B");
  for (std::size_t w = 0; w < f.word_count(); ++w) {
    if (f.value(w).slice(0, pair.v_dim()).any()) {
      throw std::invalid_argument("extend_cocycle: f has a V-valued component");
    }
    if ((boolean_value(pair, f, w) & ~x).any()) throw std::invalid_argument("extend_cocycle: f != x f");
  }
  require_cocycle(pair, f, caps);

  const SubringExtension ext(pair.subring(), x);
  CoefficientPair big(pair.v_dim(), ext.extended());
  auto out = zero_cochain(big, f.k, f.s, caps);
  lift_values(ext, big, f, out);
  return {std::move(big), std::move(out)};
}

Cochain multiply_values(const CoefficientPair& pair, const Cochain& f, const BitVector& x) {
  auto out = f;
  out.coords = BitVector(f.coords.size());
  if (f.value_degree() < 1) return out;
  for (std::size_t w = 0; w < f.word_count(); ++w) {
    add_boolean_value(pair, out, w, boolean_value(pair, f, w) & x);
  }
  return out;
}

ExtensionResult extend_cocycle_general(const CoefficientPair& pair, const BitVector& x, const Cochain& f,
                                       const ResourceCaps& caps) {
  check_bottom_row(f);
  const auto n = pair.module().atom_count();
  if (x.size() != n) throw std::invalid_argument("extend_cocycle: x is not an element of B");
  require_cocycle(pair, f, caps);

  // V-valued cochains are cocycles and lift through either section.
  auto v_part = f;
  v_part.coords = BitVector(f.coords.size());
  for (std::size_t w = 0; w < f.word_count(); ++w) {
    for (std::size_t i = 0; i < pair.v_dim(); ++i) {
      if (f.coords.test(w * f.value_dim + i)) v_part.coords.set(w * f.value_dim + i);
    }
  }
  const auto on_x = multiply_values(pair, f, x);
  const auto off_x = multiply_values(pair, f, ~x);

  const SubringExtension ext_x(pair.subring(), x);
  const SubringExtension ext_c(pair.subring(), ~x);
  if (!(ext_x.extended() == ext_c.extended())) throw std::logic_error("extend_cocycle: A<x> != A<1+x>");
  CoefficientPair big(pair.v_dim(), ext_x.extended());
  auto out = zero_cochain(big, f.k, f.s, caps);
  lift_values(ext_x, big, v_part, out);
  lift_values(ext_x, big, on_x, out);
  lift_values(ext_c, big, off_x, out);
  return {std::move(big), std::move(out)};
}

Cochain restrict_cochain(const CoefficientPair& big, const CoefficientPair& small, const Cochain& h,
                         const ResourceCaps& caps) {
  if (!small.subring().is_refined_by(big.subring()) || big.v_dim() != small.v_dim()) {
    throw std::invalid_argument("restrict_cochain: the first pair does not refine the second");
  }
  const auto& fine = big.subring();
  const auto& coarse = small.subring();
  std::vector<std::vector<std::size_t>> children(coarse.block_count());
  for (std::size_t c = 0; c < fine.block_count(); ++c) {
    children[coarse.block_of(fine.blocks()[c].front())].push_back(c);
  }
  const auto small_alphabet = small.alphabet();
  const auto m = small.v_dim();

  auto out = zero_cochain(small, h.k, h.s, caps);
  Word current;
  for (std::size_t t = 0; t < out.word_count(); ++t) {
    const Word& w = out.basis->word(t);
    BitVector acc(out.value_dim);
    current.assign(w.size(), 0);
    std::function<void(std::size_t)> expand = [&](std::size_t pos) {
      if (pos == w.size()) {
        const auto idx = h.basis->find(current);
        if (idx) acc ^= h.value(*idx);
        return;
      }
      if (!small_alphabet.is_atom(w[pos])) {
        current[pos] = w[pos];
        expand(pos + 1);
        return;
      }
      for (auto c : children[small_alphabet.atom_index(w[pos])]) {
        current[pos] = static_cast<Letter>(m + c);
        expand(pos + 1);
      }
    };
    expand(0);
    out.set_value(t, acc);
  }
  return out;
}

// ---------------------------------------------------------------- bottom row and sampling

std::size_t bottom_cocycles(const ConnectedSumAlgebra& alg, int k, const ResourceCaps& caps) {
  if (k < 1) throw std::invalid_argument("bottom_cocycles: k must be at least 1");
  const auto d = cochain_differential(CoefficientPair::same(alg), k, -k, caps);
  return d.cols() - rank(d);
}

CocycleSampler::CocycleSampler(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps)
    : zero_(zero_cochain(pair, k, s, caps)), basis_(kernel_basis(cochain_differential(pair, k, s, caps))) {}

Cochain CocycleSampler::sample(std::mt19937_64& rng) const {
  auto out = zero_;
  std::bernoulli_distribution coin(0.5);
  for (const auto& b : basis_) {
    if (coin(rng)) out.coords ^= b;
  }
  return out;
}

Cochain random_cochain(const CoefficientPair& pair, int k, int s, std::mt19937_64& rng, const ResourceCaps& caps) {
  auto out = zero_cochain(pair, k, s, caps);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < out.coords.size(); ++i) {
    if (coin(rng)) out.coords.set(i);
  }
  return out;
}

}  // namespace koszulhh
