#include "koszulhh/koszul.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace koszulhh {

// ---------------------------------------------------------------- Alphabet

bool Alphabet::is_admissible(const Word& w) const {
  for (auto t : w) {
    if (t >= size()) return false;
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == w[i + 1] && is_atom(w[i])) return false;
  }
  return true;
}

bool Alphabet::is_stable(const Word& w) const {
  return !w.empty() && is_atom(w.front()) && w.front() == w.back();
}

std::string Alphabet::label(Letter t) const {
  if (t < v_dim) return "v" + std::to_string(t + 1);
  return "x" + std::to_string(t - v_dim + 1);
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += label(w[i]);
  }
  return out;
}

Word Alphabet::parse(const std::string& text) const {
  Word w;
  if (text.empty()) return w;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.size() < 2 || (token[0] != 'v' && token[0] != 'x')) {
      throw std::invalid_argument("bad generator token '" + token + "'");
    }
    std::size_t idx = 0;
    try {
      idx = std::stoul(token.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad generator token '" + token + "'");
    }
    const std::size_t bound = token[0] == 'v' ? v_dim : atoms;
    if (idx == 0 || idx > bound) throw std::invalid_argument("generator out of range '" + token + "'");
    w.push_back(static_cast<Letter>(token[0] == 'v' ? idx - 1 : v_dim + idx - 1));
  }
  return w;
}

std::size_t admissible_count(const Alphabet& alphabet, int k) {
  if (k < 0) return 0;
  if (k == 0) return 1;
  // Words ending in a V letter / ending in an atom.
  long double ending_v = static_cast<long double>(alphabet.v_dim);
  long double ending_j = static_cast<long double>(alphabet.atoms);
  const long double m = static_cast<long double>(alphabet.v_dim);
  const long double n = static_cast<long double>(alphabet.atoms);
  for (int i = 1; i < k; ++i) {
    const long double total = ending_v + ending_j;
    const long double next_j = n * ending_v + (n > 0 ? (n - 1) : 0) * ending_j;
    ending_v = m * total;
    ending_j = next_j;
  }
  const long double total = ending_v + ending_j;
  if (total > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2)) {
    return std::numeric_limits<std::size_t>::max() / 2;
  }
  return static_cast<std::size_t>(total);
}

std::uint64_t tensor_index(const Alphabet& alphabet, const Letter* begin, std::size_t length) {
  std::uint64_t idx = 0;
  const std::uint64_t base = alphabet.size();
  for (std::size_t i = 0; i < length; ++i) idx = idx * base + begin[i];
  return idx;
}

// ---------------------------------------------------------------- KoszulBasis

namespace {

bool radix_fits(const Alphabet& alphabet, int k) {
  long double span = 1;
  for (int i = 0; i < k; ++i) span *= static_cast<long double>(alphabet.size());
  return span < 1.8e19L;
}

}  // namespace

KoszulBasis::KoszulBasis(Alphabet alphabet, int k, std::vector<Word> words)
    : alphabet_(alphabet), k_(k), words_(std::move(words)) {
  if (!radix_fits(alphabet_, k_)) {
    throw CapExceeded("word length too large for tensor indexing", static_cast<std::size_t>(k_), 0);
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(tensor_index(alphabet_, words_[i].data(), words_[i].size()), i);
  }
}

std::optional<std::size_t> KoszulBasis::find(const Word& w) const { return find(w.data(), w.size()); }

std::optional<std::size_t> KoszulBasis::find(const Letter* begin, std::size_t length) const {
  if (static_cast<int>(length) != k_) return std::nullopt;
  for (std::size_t i = 0; i < length; ++i) {
    if (begin[i] >= alphabet_.size()) return std::nullopt;
  }
  const auto it = index_.find(tensor_index(alphabet_, begin, length));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

KoszulBasis admissible_sequences(const ConnectedSumAlgebra& alg, int k, const ResourceCaps& caps) {
  return admissible_sequences(Alphabet(alg), k, caps);
}

KoszulBasis admissible_sequences(const Alphabet& alphabet, int k, const ResourceCaps& caps) {
  if (k < 0) throw std::invalid_argument("admissible_sequences: negative length");
  check_cap("admissible sequences of length " + std::to_string(k), admissible_count(alphabet, k), caps);
  std::vector<Word> words;
  words.reserve(admissible_count(alphabet, k));
  Word current;
  current.reserve(static_cast<std::size_t>(k));
  // Depth-first in letter order gives lexicographic output.
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == k) {
      words.push_back(current);
      return;
    }
    for (std::size_t t = 0; t < alphabet.size(); ++t) {
      const auto letter = static_cast<Letter>(t);
      if (!current.empty() && current.back() == letter && alphabet.is_atom(letter)) continue;
      current.push_back(letter);
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  return KoszulBasis(alphabet, k, std::move(words));
}

// ---------------------------------------------------------------- generic construction

BitMatrix quadratic_multiplication(const ConnectedSumAlgebra& alg) {
  const Alphabet alphabet(alg);
  const std::size_t g = alphabet.size();
  BitMatrix mu(alg.graded_dim(2), g * g);
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      const auto product = graded_multiply(alg, alg.basis_element(1, a), alg.basis_element(1, b));
      for (auto r : product.coeffs.support()) mu.set(r, a * g + b);
    }
  }
  return mu;
}

GenericKoszulSpace koszul_space_generic(const ConnectedSumAlgebra& alg, int k, const ResourceCaps& caps) {
  if (k < 0) throw std::invalid_argument("koszul_space_generic: negative length");
  const Alphabet alphabet(alg);
  const std::size_t g = alphabet.size();
  long double span = 1;
  for (int i = 0; i < k; ++i) span *= static_cast<long double>(g);
  check_cap("tensor power for generic Koszul space", static_cast<std::size_t>(std::min<long double>(span, 1e18L)), caps);

  GenericKoszulSpace out;
  out.k = k;
  out.ambient_dim = static_cast<std::size_t>(span);
  if (k < 2) {
    out.constraints = BitMatrix(0, out.ambient_dim);
    out.basis = kernel_basis(out.constraints);
    return out;
  }

  const auto mu = quadratic_multiplication(alg);
  const std::size_t target = mu.rows();
  std::size_t pow_before = 1;  // g^j
  std::vector<std::size_t> powers(static_cast<std::size_t>(k) + 1, 1);
  for (int i = 1; i <= k; ++i) powers[static_cast<std::size_t>(i)] = powers[static_cast<std::size_t>(i) - 1] * g;

  // One block of rows per position j of the relation: V^{⊗j} ⊗ A_2 ⊗ V^{⊗(k-j-2)}.
  const std::size_t block_rows = target * powers[static_cast<std::size_t>(k) - 2];
  BitMatrix constraints(block_rows * static_cast<std::size_t>(k - 1), out.ambient_dim);
  for (int j = 0; j + 1 < k; ++j) {
    pow_before = powers[static_cast<std::size_t>(j)];
    const std::size_t pow_after = powers[static_cast<std::size_t>(k - j - 2)];
    for (std::size_t col = 0; col < out.ambient_dim; ++col) {
      const std::size_t after = col % pow_after;
      const std::size_t pair = (col / pow_after) % (g * g);
      const std::size_t before = col / (pow_after * g * g);
      for (std::size_t r = 0; r < target; ++r) {
        if (!mu.get(r, pair)) continue;
        const std::size_t row = static_cast<std::size_t>(j) * block_rows + (before * target + r) * pow_after + after;
        constraints.set(row, col);
      }
    }
    (void)pow_before;
  }
  out.constraints = std::move(constraints);
  out.basis = kernel_basis(out.constraints);
  return out;
}

// ---------------------------------------------------------------- Koszul complex

namespace {

// Product of two basis elements of a connected sum is a basis element or zero.
// Returns the index in degree da + db, or -1.
long basis_product(const ConnectedSumAlgebra& alg, int da, std::size_t ia, int db, std::size_t ib) {
  if (da == 0) return static_cast<long>(ib);
  if (db == 0) return static_cast<long>(ia);
  const auto offa = alg.atom_offset(da);
  const auto offb = alg.atom_offset(db);
  if (ia < offa || ib < offb) return -1;
  if (ia - offa != ib - offb) return -1;
  return static_cast<long>(alg.atom_offset(da + db) + (ia - offa));
}

struct ChainLayout {
  struct Block {
    int left_degree;
    int right_degree;
    std::size_t offset;
  };
  std::vector<Block> blocks;
  std::size_t dim = 0;
  std::size_t words = 0;
  std::size_t left_dim(const ConnectedSumAlgebra& alg, const Block& b) const { return alg.graded_dim(b.left_degree); }
};

ChainLayout layout_for(const ConnectedSumAlgebra& alg, const KoszulBasis& basis, int d) {
  ChainLayout layout;
  layout.words = basis.size();
  const int rest = d - basis.length();
  for (int a = 0; a <= rest; ++a) {
    const int b = rest - a;
    const std::size_t size = alg.graded_dim(a) * basis.size() * alg.graded_dim(b);
    if (size == 0) continue;
    layout.blocks.push_back({a, b, layout.dim});
    layout.dim += size;
  }
  return layout;
}

std::size_t chain_index(const ConnectedSumAlgebra& alg, const ChainLayout& layout, int a, std::size_t ia,
                        std::size_t word, std::size_t ib) {
  for (const auto& blk : layout.blocks) {
    if (blk.left_degree != a) continue;
    const std::size_t right_dim = alg.graded_dim(blk.right_degree);
    return blk.offset + (ia * layout.words + word) * right_dim + ib;
  }
  throw std::logic_error("chain_index: missing block");
}

// d_i : K_i -> K_{i-1} in internal degree d.
BitMatrix koszul_differential(const ConnectedSumAlgebra& alg, const KoszulBasis& from, const ChainLayout& src,
                              const KoszulBasis& to, const ChainLayout& dst) {
  BitMatrix d(dst.dim, src.dim);
  const auto i = static_cast<std::size_t>(from.length());
  for (const auto& blk : src.blocks) {
    const std::size_t ldim = alg.graded_dim(blk.left_degree);
    const std::size_t rdim = alg.graded_dim(blk.right_degree);
    for (std::size_t ia = 0; ia < ldim; ++ia) {
      for (std::size_t w = 0; w < from.size(); ++w) {
        const Word& word = from.word(w);
        const auto tail = to.find(word.data() + 1, i - 1);
        const auto head = to.find(word.data(), i - 1);
        for (std::size_t ib = 0; ib < rdim; ++ib) {
          const std::size_t col = blk.offset + (ia * from.size() + w) * rdim + ib;
          // (a t_1) ⊗ t_2..t_i ⊗ a'
          const long left = basis_product(alg, blk.left_degree, ia, 1, word.front());
          if (left >= 0 && tail) {
            d.flip(chain_index(alg, dst, blk.left_degree + 1, static_cast<std::size_t>(left), *tail, ib), col);
          }
          // a ⊗ t_1..t_{i-1} ⊗ (t_i a')
          const long right = basis_product(alg, 1, word.back(), blk.right_degree, ib);
          if (right >= 0 && head) {
            d.flip(chain_index(alg, dst, blk.left_degree, ia, *head, static_cast<std::size_t>(right)), col);
          }
        }
      }
    }
  }
  return d;
}

}  // namespace

KoszulReport verify_koszul(const ConnectedSumAlgebra& alg, int max_degree, const ResourceCaps& caps) {
  if (max_degree < 1) throw std::invalid_argument("verify_koszul: max_degree must be at least 1");
  std::vector<KoszulBasis> bases;
  for (int i = 0; i <= max_degree; ++i) bases.push_back(admissible_sequences(alg, i, caps));

  KoszulReport report;
  for (int d = 0; d <= max_degree; ++d) {
    KoszulDegreeReport deg;
    deg.internal_degree = d;
    deg.algebra_dim = alg.graded_dim(d);

    std::vector<ChainLayout> layouts;
    for (int i = 0; i <= d; ++i) layouts.push_back(layout_for(alg, bases[static_cast<std::size_t>(i)], d));
    // diffs[i] is d_i : K_i -> K_{i-1}, for i = 1..d.
    std::vector<BitMatrix> diffs(static_cast<std::size_t>(d) + 1);
    std::vector<std::size_t> ranks(static_cast<std::size_t>(d) + 2, 0);
    for (int i = 1; i <= d; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      diffs[ui] = koszul_differential(alg, bases[ui], layouts[ui], bases[ui - 1], layouts[ui - 1]);
      ranks[ui] = rank(diffs[ui]);
    }
    for (int i = 2; i <= d; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (!diffs[ui - 1].multiply(diffs[ui]).is_zero()) deg.d_squared_zero = false;
    }
    // The multiplication map K_0 -> A must kill the image of d_1.
    if (d >= 1 && layouts[0].dim > 0) {
      BitMatrix mu(alg.graded_dim(d), layouts[0].dim);
      for (const auto& blk : layouts[0].blocks) {
        const std::size_t rdim = alg.graded_dim(blk.right_degree);
        for (std::size_t ia = 0; ia < alg.graded_dim(blk.left_degree); ++ia) {
          for (std::size_t ib = 0; ib < rdim; ++ib) {
            const long p = basis_product(alg, blk.left_degree, ia, blk.right_degree, ib);
            if (p >= 0) mu.flip(static_cast<std::size_t>(p), blk.offset + ia * rdim + ib);
          }
        }
      }
      if (!mu.multiply(diffs[1]).is_zero()) deg.d_squared_zero = false;
    }
    if (!deg.d_squared_zero) {
      report.passed = false;
      report.failures.push_back({d, -1, 0, "differential does not square to zero"});
    }

    for (int i = 0; i <= d; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const std::size_t dim = layouts[ui].dim;
      const std::size_t h = dim - ranks[ui] - ranks[ui + 1];
      deg.chain_dims.push_back(dim);
      deg.homology.push_back(h);
      if (i > 0 && h != 0) {
        report.passed = false;
        report.failures.push_back({d, i, h, "nonzero homology in positive homological degree"});
      }
      if (i == 0 && h != deg.algebra_dim) {
        report.passed = false;
        report.failures.push_back({d, 0, h, "degree-0 homology differs from the algebra"});
      }
    }
    report.degrees.push_back(std::move(deg));
  }
  return report;
}

}  // namespace koszulhh
