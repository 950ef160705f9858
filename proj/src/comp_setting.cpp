#include "amalgam/comp_setting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace amalgam {

namespace {

constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

__extension__ using Uint128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  Uint128 product = static_cast<Uint128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(product & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(product >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t result = 1;
  while (e > 0) {
    if (e & 1ULL) result = mul_mod(result, base);
    base = mul_mod(base, base);
    e >>= 1ULL;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

std::int64_t rank_mod(ModMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    std::uint64_t inv = inv_mod(m[rank][col]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      std::uint64_t factor = mul_mod(m[r][col], inv);
      for (std::size_t c = col; c < cols; ++c) m[r][c] = sub_mod(m[r][c], mul_mod(factor, m[rank][c]));
    }
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

void check_length(const BipartiteQuiver& q, const DimensionVector& alpha) {
  if (alpha.size() != q.vertex_count()) {
    throw std::invalid_argument("dimension vector has length " + std::to_string(alpha.size()) + ", expected " +
                                std::to_string(q.vertex_count()));
  }
  if ((alpha.array() < 0).any()) throw std::invalid_argument("dimension vector has negative entries");
}

std::uint64_t mix_seed(std::uint64_t seed, const DimensionVector& alpha) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (Index i = 0; i < alpha.size(); ++i) {
    h ^= static_cast<std::uint64_t>(alpha(i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// One row (or column) of psi: vertex, copy of the vertex, base block,
// copy of that block inside the vertex, coordinate inside the block.
struct Slot {
  Index vertex;
  std::int64_t copy;
  Index block;
  std::int64_t inner;
  std::int64_t coord;
};

std::vector<Slot> slots(const std::vector<std::int64_t>& base_dims, const IntMatrix& mult, const DimensionVector& dims,
                        Index offset) {
  std::vector<Slot> out;
  for (Index v = 0; v < mult.cols(); ++v) {
    for (std::int64_t c = 0; c < dims(offset + v); ++c) {
      for (Index k = 0; k < mult.rows(); ++k) {
        for (std::int64_t u = 0; u < mult(k, v); ++u) {
          for (std::int64_t e = 0; e < base_dims[static_cast<std::size_t>(k)]; ++e) out.push_back({v, c, k, u, e});
        }
      }
    }
  }
  return out;
}

}  // namespace

IntMatrix restriction_constraints(const BipartiteQuiver& q) {
  IntMatrix m(static_cast<Index>(q.base_dims.size()), q.vertex_count());
  m.leftCols(q.left_count()) = q.left_mult;
  m.rightCols(q.right_count()) = -q.right_mult;
  return m;
}

RankTestResult semistable_rank_test(const BipartiteQuiver& q, const DimensionVector& alpha, std::uint64_t seed) {
  check_length(q, alpha);
  RankTestResult result;
  const Index s = q.left_count();
  std::int64_t n_left = 0;
  std::int64_t n_right = 0;
  for (Index i = 0; i < s; ++i) n_left += q.left_dims[static_cast<std::size_t>(i)] * alpha(i);
  for (Index j = 0; j < q.right_count(); ++j) n_right += q.right_dims[static_cast<std::size_t>(j)] * alpha(s + j);
  result.size = n_left;
  if (n_left != n_right) return result;
  if (n_left == 0) {
    result.full_rank = true;
    return result;
  }

  const auto rows = slots(q.base_dims, q.left_mult, alpha, 0);
  const auto cols = slots(q.base_dims, q.right_mult, alpha, s);

  // det(psi) is a polynomial of degree n; Schwartz-Zippel gives a per-trial
  // false-negative probability of at most n / p.
  const double bits_per_trial = 61.0 - std::log2(static_cast<double>(n_left));
  const int trials = std::max(1, static_cast<int>(std::ceil(40.0 / bits_per_trial)));

  std::mt19937_64 rng(mix_seed(seed, alpha));
  std::uniform_int_distribution<std::uint64_t> uniform(0, kPrime - 1);
  for (int trial = 0; trial < trials; ++trial) {
    ++result.trials;
    // One independent coefficient per (arrow, copy pair): arrows of Lambda from
    // left i to right j are indexed by (k, u, w); the identity on U_k repeats it
    // along the block coordinate.
    std::map<std::tuple<Index, std::int64_t, Index, std::int64_t, Index, std::int64_t, std::int64_t>, std::uint64_t>
        coeff;
    ModMatrix psi(rows.size(), std::vector<std::uint64_t>(cols.size(), 0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const Slot& a = rows[r];
        const Slot& b = cols[c];
        if (a.block != b.block || a.coord != b.coord) continue;
        auto key = std::make_tuple(a.vertex, a.inner, b.vertex, b.inner, a.block, a.copy, b.copy);
        auto it = coeff.find(key);
        if (it == coeff.end()) it = coeff.emplace(key, uniform(rng)).first;
        psi[r][c] = it->second;
      }
    }
    if (rank_mod(std::move(psi)) == n_left) {
      result.full_rank = true;
      return result;
    }
  }
  return result;
}

bool hall_condition(const BipartiteQuiver& q, const DimensionVector& alpha) {
  check_length(q, alpha);
  const Index s = q.left_count();
  const Index t = q.right_count();
  for (Index k = 0; k < static_cast<Index>(q.base_dims.size()); ++k) {
    std::vector<std::int64_t> left_w;
    std::vector<std::int64_t> right_w;
    std::vector<Index> left_v;
    std::vector<Index> right_v;
    for (Index i = 0; i < s; ++i) {
      if (q.left_mult(k, i) * alpha(i) > 0) {
        left_w.push_back(q.left_mult(k, i) * alpha(i));
        left_v.push_back(i);
      }
    }
    for (Index j = 0; j < t; ++j) {
      if (q.right_mult(k, j) * alpha(s + j) > 0) {
        right_w.push_back(q.right_mult(k, j) * alpha(s + j));
        right_v.push_back(j);
      }
    }
    // Block (i, j) of psi_k is free iff Hom_S(V_i, W_j) has a U_k-component.
    auto adjacent = [&](Index i, Index j) { return q.left_mult(k, i) > 0 && q.right_mult(k, j) > 0; };
    auto hall = [&](const std::vector<std::int64_t>& from_w, const std::vector<Index>& from_v,
                    const std::vector<std::int64_t>& to_w, const std::vector<Index>& to_v, bool from_left) {
      if (from_w.size() > 24) throw std::invalid_argument("hall_condition: too many vertices for subset enumeration");
      const std::uint64_t subsets = 1ULL << from_w.size();
      for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        std::int64_t demand = 0;
        std::vector<bool> hit(to_w.size(), false);
        for (std::size_t a = 0; a < from_w.size(); ++a) {
          if (!(mask >> a & 1ULL)) continue;
          demand += from_w[a];
          for (std::size_t b = 0; b < to_w.size(); ++b) {
            bool adj = from_left ? adjacent(from_v[a], to_v[b]) : adjacent(to_v[b], from_v[a]);
            if (adj) hit[b] = true;
          }
        }
        std::int64_t supply = 0;
        for (std::size_t b = 0; b < to_w.size(); ++b) {
          if (hit[b]) supply += to_w[b];
        }
        if (demand > supply) return false;
      }
      return true;
    };
    if (!hall(left_w, left_v, right_w, right_v, true)) return false;
    if (!hall(right_w, right_v, left_w, left_v, false)) return false;
  }
  return true;
}

bool comp_contains(const BipartiteQuiver& q, const DimensionVector& alpha) {
  bool randomized = semistable_rank_test(q, alpha).full_rank;
  bool oracle = hall_condition(q, alpha);
  if (randomized != oracle) {
    std::ostringstream os;
    os << "semistability tests disagree on alpha = (" << alpha.transpose() << "): rank test " << randomized
       << ", Hall " << oracle;
    throw std::logic_error(os.str());
  }
  return randomized;
}

bool lex_less(const DimensionVector& a, const DimensionVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

CompGenerators comp_generators(const BipartiteQuiver& q, std::int64_t bound) {
  // Contejean-Devie completion for the minimal non-negative solutions of
  // restriction_constraints(q) * alpha = 0, which are exactly the
  // indecomposable elements of comp.
  using Vec = std::vector<std::int64_t>;
  const IntMatrix constraints = restriction_constraints(q);
  const Index dim = q.vertex_count();
  const Index s = q.left_count();

  auto weight = [&](const Vec& x) {
    std::int64_t w = 0;
    for (Index i = 0; i < s; ++i) w += q.left_dims[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return w;
  };
  auto image = [&](const Vec& x) {
    IntVector v = IntVector::Zero(constraints.rows());
    for (Index i = 0; i < dim; ++i) v += constraints.col(i) * x[static_cast<std::size_t>(i)];
    return v;
  };
  auto dominates = [](const Vec& x, const Vec& b) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < b[i]) return false;
    }
    return true;
  };

  CompGenerators out;
  std::vector<Vec> solutions;
  std::set<Vec> frontier;
  for (Index i = 0; i < dim; ++i) {
    Vec e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(i)] = 1;
    if (bound > 0 && weight(e) > bound) {
      out.possibly_incomplete = true;
      continue;
    }
    frontier.insert(e);
  }

  while (!frontier.empty()) {
    std::set<Vec> next;
    std::vector<Vec> pending;
    for (const Vec& x : frontier) {
      if (image(x).isZero()) solutions.push_back(x);
      else pending.push_back(x);
    }
    for (const Vec& x : pending) {
      const IntVector ax = image(x);
      for (Index j = 0; j < dim; ++j) {
        if (ax.dot(constraints.col(j)) >= 0) continue;
        Vec y = x;
        ++y[static_cast<std::size_t>(j)];
        bool covered = std::any_of(solutions.begin(), solutions.end(), [&](const Vec& b) { return dominates(y, b); });
        if (covered) continue;
        if (bound > 0 && weight(y) > bound) {
          out.possibly_incomplete = true;
          continue;
        }
        next.insert(std::move(y));
      }
    }
    frontier = std::move(next);
  }

  for (const Vec& x : solutions) {
    DimensionVector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = x[static_cast<std::size_t>(i)];
    if (!semistable_rank_test(q, v).full_rank) {
      std::ostringstream os;
      os << "generator candidate (" << v.transpose() << ") failed the semistability rank test";
      throw std::logic_error(os.str());
    }
    out.generators.push_back(std::move(v));
  }
  std::sort(out.generators.begin(), out.generators.end(), lex_less);
  return out;
}

std::optional<IntVector> decompose(const DimensionVector& alpha, const std::vector<DimensionVector>& gens) {
  IntVector coeffs = IntVector::Zero(static_cast<Index>(gens.size()));
  std::function<bool(const DimensionVector&, std::size_t)> search = [&](const DimensionVector& rest,
                                                                          std::size_t from) -> bool {
    if (rest.isZero()) return true;
    for (std::size_t g = from; g < gens.size(); ++g) {
      if (((rest - gens[g]).array() < 0).any()) continue;
      ++coeffs(static_cast<Index>(g));
      if (search(rest - gens[g], g)) return true;
      --coeffs(static_cast<Index>(g));
    }
    return false;
  };
  if (!search(alpha, 0)) return std::nullopt;
  return coeffs;
}

QuiverSetting quiver_setting(const BipartiteQuiver& q, const std::vector<DimensionVector>& gens) {
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (!comp_contains(q, gens[a])) {
      std::ostringstream os;
      os << "vector (" << gens[a].transpose() << ") is not in comp";
      throw std::invalid_argument(os.str());
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (gens[a] == gens[b]) throw std::invalid_argument("generator list contains duplicates");
    }
  }
  const Index k = static_cast<Index>(gens.size());
  QuiverSetting qs;
  qs.generators = gens;
  qs.arrow_matrix.resize(k, k);
  qs.alpha.resize(k);
  for (Index i = 0; i < k; ++i) {
    qs.alpha(i) = q.total_dimension(gens[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < k; ++j) {
      std::int64_t arrows = (i == j ? 1 : 0) - euler_form(q, gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(j)]);
      if (arrows < 0) {
        std::ostringstream os;
        os << "negative arrow count " << arrows << " from vertex " << i << " to " << j
           << ": input is not a set of semigroup generators";
        throw std::invalid_argument(os.str());
      }
      qs.arrow_matrix(i, j) = arrows;
    }
  }

  // Vertex labels: the eigenvalue names of the supporting simples when known.
  for (const auto& g : gens) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](std::int64_t mult, const std::string& name) {
      if (!first) os << ",";
      first = false;
      if (mult > 1) os << mult << "x";
      os << name;
    };
    for (Index i = 0; i < g.size(); ++i) {
      if (g(i) == 0) continue;
      const bool left = i < q.left_count();
      const Index local = left ? i : i - q.left_count();
      std::string name;
      if (q.labels) {
        const auto& text = left ? q.labels->left_text : q.labels->right_text;
        if (static_cast<std::size_t>(local) < text.size()) name = text[static_cast<std::size_t>(local)];
      }
      if (name.empty()) name = (left ? "L" : "R") + std::to_string(local + 1);
      emit(g(i), name);
    }
    qs.vertex_labels.push_back(os.str());
  }
  return qs;
}

bool is_symmetric(const QuiverSetting& qs) {
  const IntMatrix& m = qs.arrow_matrix;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return true;
}

bool gamma_has_simples(const std::array<std::int64_t, 6>& b, const std::array<std::int64_t, 6>& c) {
  auto all_zero = [](const std::array<std::int64_t, 6>& x) {
    return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
  };
  auto cyclic_ok = [](const std::array<std::int64_t, 6>& x) {
    for (std::size_t i = 0; i < 6; ++i) {
      if (x[i] > x[(i + 5) % 6] + x[(i + 1) % 6]) return false;
    }
    return true;
  };
  return (all_zero(c) && cyclic_ok(b)) || (all_zero(b) && cyclic_ok(c));
}

std::string setting_to_dot(const QuiverSetting& qs) {
  std::ostringstream os;
  os << "// schema amalgam-quiver/1\n";
  os << "digraph Q {\n";
  for (Index i = 0; i < qs.vertex_count(); ++i) {
    os << "  v" << (i + 1) << " [label=\"" << qs.vertex_labels[static_cast<std::size_t>(i)] << "\\nalpha=" << qs.alpha(i)
       << "\"];\n";
  }
  for (Index i = 0; i < qs.vertex_count(); ++i) {
    for (Index j = 0; j < qs.vertex_count(); ++j) {
      for (std::int64_t a = 0; a < qs.arrow_matrix(i, j); ++a) os << "  v" << (i + 1) << " -> v" << (j + 1) << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string setting_to_text(const QuiverSetting& qs, bool possibly_incomplete) {
  std::ostringstream os;
  const Index k = qs.vertex_count();
  os << k << (k == 1 ? " vertex, " : " vertices, ") << qs.loop_count() << " loops, alpha=(";
  for (Index i = 0; i < k; ++i) os << (i ? "," : "") << qs.alpha(i);
  os << ")\n";
  std::int64_t between = qs.arrow_matrix.sum() - qs.loop_count();
  os << "arrows between distinct vertices: " << between << "\n";
  os << "symmetric: " << (is_symmetric(qs) ? "yes" : "no") << "\n";
  if (possibly_incomplete) os << "warning: search bound reached, generator list may be incomplete\n";
  for (Index i = 0; i < k; ++i) {
    const auto& g = qs.generators[static_cast<std::size_t>(i)];
    os << "beta_" << (i + 1) << " = (";
    for (Index c = 0; c < g.size(); ++c) os << (c ? "," : "") << g(c);
    os << ")  [" << qs.vertex_labels[static_cast<std::size_t>(i)] << "]\n";
  }
  os << "arrow matrix:\n";
  for (Index i = 0; i < k; ++i) {
    os << " ";
    for (Index j = 0; j < k; ++j) os << " " << qs.arrow_matrix(i, j);
    os << "\n";
  }
  return os.str();
}

}  // namespace amalgam
