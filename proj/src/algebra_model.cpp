#include "amalgam/algebra_model.hpp"

#include <sstream>
#include <stdexcept>

namespace amalgam {

SemisimpleAlgebra::SemisimpleAlgebra(std::vector<std::int64_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("semisimple algebra needs at least one block");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i] < 1) {
      throw std::invalid_argument("block " + std::to_string(i) + " has size " + std::to_string(blocks_[i]) +
                                  " (must be >= 1)");
    }
  }
}

std::int64_t SemisimpleAlgebra::dimension() const {
  std::int64_t total = 0;
  for (auto k : blocks_) total += k * k;
  return total;
}

BratteliEmbedding::BratteliEmbedding(SemisimpleAlgebra base, SemisimpleAlgebra target, IntMatrix multiplicities)
    : base_(std::move(base)), target_(std::move(target)), mult_(std::move(multiplicities)) {
  if (mult_.rows() != base_.size() || mult_.cols() != target_.size()) {
    std::ostringstream os;
    os << "multiplicity matrix is " << mult_.rows() << "x" << mult_.cols() << ", expected " << base_.size() << "x"
       << target_.size() << " (base blocks x target blocks)";
    throw std::invalid_argument(os.str());
  }
  if ((mult_.array() < 0).any()) throw std::invalid_argument("multiplicities must be non-negative");
  for (Index j = 0; j < target_.size(); ++j) {
    std::int64_t sum = 0;
    for (Index k = 0; k < base_.size(); ++k) sum += mult_(k, j) * base_.block(k);
    if (sum != target_.block(j)) {
      std::ostringstream os;
      os << "column " << j << ": target block has size " << target_.block(j) << " but sum_k mult[k][" << j
         << "] * base[k] = " << sum;
      throw std::invalid_argument(os.str());
    }
  }
}

AmalgamSpec::AmalgamSpec(BratteliEmbedding l, BratteliEmbedding r, std::optional<AmalgamLabels> lab)
    : left(std::move(l)), right(std::move(r)), labels(std::move(lab)) {
  if (!(left.base() == right.base())) throw std::invalid_argument("left and right embeddings have different bases");
  if (labels) {
    auto check = [](std::size_t got, Index want, const char* which) {
      if (got != 0 && static_cast<Index>(got) != want) {
        throw std::invalid_argument(std::string("labels.") + which + " has " + std::to_string(got) +
                                    " entries, expected " + std::to_string(want));
      }
    };
    check(labels->base.size(), base().size(), "base");
    check(labels->left.size(), left.target().size(), "left");
    check(labels->right.size(), right.target().size(), "right");
  }
}

std::int64_t BipartiteQuiver::total_dimension(const DimensionVector& alpha) const {
  if (alpha.size() != vertex_count()) throw std::invalid_argument("dimension vector has wrong length");
  std::int64_t n = 0;
  for (Index i = 0; i < left_count(); ++i) n += left_dims[static_cast<std::size_t>(i)] * alpha(i);
  return n;
}

BipartiteQuiver build_bipartite(const AmalgamSpec& spec) {
  BipartiteQuiver q;
  q.base_dims = spec.base().blocks();
  q.left_dims = spec.left.target().blocks();
  q.right_dims = spec.right.target().blocks();
  q.left_mult = spec.left.multiplicities();
  q.right_mult = spec.right.multiplicities();
  q.arrow_counts = q.left_mult.transpose() * q.right_mult;
  q.labels = spec.labels;

  const Index s = q.left_count();
  const Index t = q.right_count();
  q.theta.resize(s + t);
  for (Index i = 0; i < s; ++i) q.theta(i) = -q.left_dims[static_cast<std::size_t>(i)];
  for (Index j = 0; j < t; ++j) q.theta(s + j) = q.right_dims[static_cast<std::size_t>(j)];

  q.euler = IntMatrix::Identity(s + t, s + t);
  q.euler.topRightCorner(s, t) = -q.arrow_counts;
  return q;
}

std::int64_t euler_form(const BipartiteQuiver& q, const DimensionVector& x, const DimensionVector& y) {
  if (x.size() != q.vertex_count() || y.size() != q.vertex_count()) {
    throw std::invalid_argument("euler_form: vectors must have length " + std::to_string(q.vertex_count()));
  }
  return x.dot(q.euler * y);
}

SemisimpleAlgebra cyclic_group_algebra(std::size_t n) {
  return SemisimpleAlgebra(std::vector<std::int64_t>(n, 1));
}

namespace {

IntMatrix rows(std::initializer_list<std::initializer_list<std::int64_t>> entries) {
  IntMatrix m(static_cast<Index>(entries.size()), static_cast<Index>(entries.begin()->size()));
  Index r = 0;
  for (const auto& row : entries) {
    Index c = 0;
    for (auto v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

AmalgamLabels make_labels(std::vector<std::string> base, std::vector<std::string> left,
                          std::vector<std::string> right) {
  AmalgamLabels labels;
  for (const auto& b : base) labels.base.push_back(Cyclotomic::parse(b));
  for (const auto& l : left) labels.left.push_back(Cyclotomic::parse(l));
  for (const auto& r : right) labels.right.push_back(Cyclotomic::parse(r));
  labels.base_text = std::move(base);
  labels.left_text = std::move(left);
  labels.right_text = std::move(right);
  return labels;
}

}  // namespace

AmalgamSpec dinfty_spec() {
  SemisimpleAlgebra base({1});
  SemisimpleAlgebra z2 = cyclic_group_algebra(2);
  return AmalgamSpec(BratteliEmbedding(base, z2, rows({{1, 1}})), BratteliEmbedding(base, z2, rows({{1, 1}})),
                     make_labels({"1"}, {"1", "-1"}, {"1", "-1"}));
}

AmalgamSpec projective_modular_spec() {
  SemisimpleAlgebra base({1});
  return AmalgamSpec(BratteliEmbedding(base, cyclic_group_algebra(2), rows({{1, 1}})),
                     BratteliEmbedding(base, cyclic_group_algebra(3), rows({{1, 1, 1}})),
                     make_labels({"1"}, {"1", "-1"}, {"1", "rho", "rho^2"}));
}

AmalgamSpec modular_spec() {
  // Base C Z_2 with s^2 = t^3 eigenvalues (+1, -1).
  // Z_4 eigenvalues of s: 1, i, -1, -i; Z_6 eigenvalues of t: 1, -rho^2, rho, -1, rho^2, -rho.
  SemisimpleAlgebra base = cyclic_group_algebra(2);
  IntMatrix left = rows({{1, 0, 1, 0}, {0, 1, 0, 1}});
  IntMatrix right = rows({{1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1}});
  return AmalgamSpec(BratteliEmbedding(base, cyclic_group_algebra(4), left),
                     BratteliEmbedding(base, cyclic_group_algebra(6), right),
                     make_labels({"1", "-1"}, {"1", "i", "-1", "-i"}, {"1", "-rho^2", "rho", "-1", "rho^2", "-rho"}));
}

AmalgamSpec matrix_amalgam_spec(std::int64_t a, std::int64_t b, std::int64_t k) {
  if (a < 1 || b < 1 || k < 1) throw std::invalid_argument("matrix amalgam needs a, b, k >= 1");
  SemisimpleAlgebra base({k});
  IntMatrix ma(1, 1);
  ma(0, 0) = a;
  IntMatrix mb(1, 1);
  mb(0, 0) = b;
  return AmalgamSpec(BratteliEmbedding(base, SemisimpleAlgebra({a * k}), ma),
                     BratteliEmbedding(base, SemisimpleAlgebra({b * k}), mb));
}

std::string bipartite_to_dot(const BipartiteQuiver& q) {
  auto label = [&](bool left, Index i) {
    std::ostringstream os;
    os << (left ? "L" : "R") << (i + 1) << " dim=" << (left ? q.left_dims : q.right_dims)[static_cast<std::size_t>(i)];
    if (q.labels) {
      const auto& text = left ? q.labels->left_text : q.labels->right_text;
      if (static_cast<std::size_t>(i) < text.size()) os << " (" << text[static_cast<std::size_t>(i)] << ")";
    }
    return os.str();
  };
  std::ostringstream os;
  os << "// schema amalgam-quiver/1\n";
  os << "digraph Lambda {\n  rankdir=LR;\n";
  for (Index i = 0; i < q.left_count(); ++i) os << "  L" << (i + 1) << " [label=\"" << label(true, i) << "\"];\n";
  for (Index j = 0; j < q.right_count(); ++j) os << "  R" << (j + 1) << " [label=\"" << label(false, j) << "\"];\n";
  for (Index i = 0; i < q.left_count(); ++i) {
    for (Index j = 0; j < q.right_count(); ++j) {
      if (q.arrow_counts(i, j) == 0) continue;
      os << "  L" << (i + 1) << " -> R" << (j + 1) << " [label=\"" << q.arrow_counts(i, j) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace amalgam
