#pragma once

// Scalar flow classes and the square-matrix semi-ring built over them.
//
// Matrix orientation: entry (i, j) is the flow from variable i into
// variable j, so column j describes the new value of variable j.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mwp {

/// The four flow classes, totally ordered 0 < m < w < p.
enum class Mwp : std::uint8_t { kZero = 0, kM = 1, kW = 2, kP = 3 };

/// Flow classes extended with a top element marking non-polynomial growth.
enum class MwpInf : std::uint8_t { kZero = 0, kM = 1, kW = 2, kP = 3, kInf = 4 };

constexpr Mwp add(Mwp a, Mwp b) { return std::max(a, b); }

constexpr Mwp mul(Mwp a, Mwp b) {
  if (a == Mwp::kZero || b == Mwp::kZero) return Mwp::kZero;
  return std::max(a, b);
}

constexpr MwpInf add(MwpInf a, MwpInf b) { return std::max(a, b); }

// 0 x inf = inf: an infinite flow is never erased by a product.
constexpr MwpInf mul(MwpInf a, MwpInf b) {
  if (a != MwpInf::kInf && b != MwpInf::kInf &&
      (a == MwpInf::kZero || b == MwpInf::kZero))
    return MwpInf::kZero;
  return std::max(a, b);
}

constexpr MwpInf widen(Mwp v) { return static_cast<MwpInf>(v); }

constexpr std::optional<Mwp> narrow(MwpInf v) {
  if (v == MwpInf::kInf) return std::nullopt;
  return static_cast<Mwp>(v);
}

/// `0 m w p`, and `i` for the infinite class.
char to_char(Mwp v);
char to_char(MwpInf v);
std::optional<MwpInf> mwpinf_from_char(char c);

inline constexpr Mwp kAllMwp[] = {Mwp::kZero, Mwp::kM, Mwp::kW, Mwp::kP};
inline constexpr MwpInf kAllMwpInf[] = {MwpInf::kZero, MwpInf::kM, MwpInf::kW,
                                        MwpInf::kP, MwpInf::kInf};

// ---------------------------------------------------------------------------
// Semi-ring descriptors. A descriptor bundles the carrier with its units and
// operations so that SquareMatrix can be instantiated over any of them.

template <typename S>
concept ScalarSemiring = requires(const typename S::value_type& a,
                                  const typename S::value_type& b) {
  typename S::value_type;
  { S::zero() } -> std::convertible_to<typename S::value_type>;
  { S::one() } -> std::convertible_to<typename S::value_type>;
  { S::add(a, b) } -> std::convertible_to<typename S::value_type>;
  { S::mul(a, b) } -> std::convertible_to<typename S::value_type>;
  { a == b } -> std::convertible_to<bool>;
};

struct MwpSemiring {
  using value_type = Mwp;
  static constexpr Mwp zero() { return Mwp::kZero; }
  static constexpr Mwp one() { return Mwp::kM; }
  static constexpr Mwp add(Mwp a, Mwp b) { return mwp::add(a, b); }
  static constexpr Mwp mul(Mwp a, Mwp b) { return mwp::mul(a, b); }
};

struct MwpInfSemiring {
  using value_type = MwpInf;
  static constexpr MwpInf zero() { return MwpInf::kZero; }
  static constexpr MwpInf one() { return MwpInf::kM; }
  static constexpr MwpInf add(MwpInf a, MwpInf b) { return mwp::add(a, b); }
  static constexpr MwpInf mul(MwpInf a, MwpInf b) { return mwp::mul(a, b); }
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense n x n matrix over a scalar semi-ring.
template <ScalarSemiring S>
class SquareMatrix {
 public:
  using value_type = typename S::value_type;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), cells_(n * n, S::zero()) {}

  static SquareMatrix zero(std::size_t n) { return SquareMatrix(n); }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = S::one();
    return m;
  }

  std::size_t size() const { return n_; }

  value_type& at(std::size_t row, std::size_t col) { return cells_[row * n_ + col]; }
  const value_type& at(std::size_t row, std::size_t col) const {
    return cells_[row * n_ + col];
  }

  /// Replace column `col` by `column` (the `1 <-j V` construction).
  void set_column(std::size_t col, const std::vector<value_type>& column) {
    if (column.size() != n_) throw DimensionError("column length does not match matrix");
    for (std::size_t i = 0; i < n_; ++i) at(i, col) = column[i];
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<value_type> cells_;
};

template <ScalarSemiring S>
SquareMatrix<S> add(const SquareMatrix<S>& a, const SquareMatrix<S>& b) {
  if (a.size() != b.size()) throw DimensionError("matrix sum of unequal dimensions");
  SquareMatrix<S> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c.at(i, j) = S::add(a.at(i, j), b.at(i, j));
  return c;
}

template <ScalarSemiring S>
SquareMatrix<S> mul(const SquareMatrix<S>& a, const SquareMatrix<S>& b) {
  if (a.size() != b.size()) throw DimensionError("matrix product of unequal dimensions");
  const std::size_t n = a.size();
  SquareMatrix<S> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto acc = S::zero();
      for (std::size_t k = 0; k < n; ++k) acc = S::add(acc, S::mul(a.at(i, k), b.at(k, j)));
      c.at(i, j) = std::move(acc);
    }
  return c;
}

/// M* = 1 + M + M^2 + ..., as the fixpoint of S <- S + S x M from S = 1 + M.
/// Entries only grow in a finite lattice, so the iteration stabilises.
template <ScalarSemiring S>
SquareMatrix<S> closure(const SquareMatrix<S>& m) {
  auto s = add(SquareMatrix<S>::identity(m.size()), m);
  for (;;) {
    auto next = add(s, mul(s, m));
    if (next == s) return s;
    s = std::move(next);
  }
}

using MwpMatrix = SquareMatrix<MwpInfSemiring>;

/// Row-major rendering, one row per line, entries separated by a space.
std::string render(const MwpMatrix& m);

/// Inverse of render(); throws std::invalid_argument on malformed text.
MwpMatrix parse_mwp_matrix(std::string_view text);

}  // namespace mwp
