#pragma once

// Exact Gaussian elimination over a field, generic in the field.
//
// A field policy provides `Scalar`, `zero()`, `one()`, `add`, `sub`, `mul`,
// `neg`, `inv` and `is_zero`. Two policies ship here: the rationals and the
// prime fields F_p with a runtime modulus.

#include "quiverkit/errors.hpp"
#include "quiverkit/exact.hpp"

#include <cstdint>
#include <type_traits>
#include <vector>

namespace quiverkit {

struct RationalField {
    using Scalar = Rational;

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar neg(const Scalar& a) const { return -a; }
    Scalar inv(const Scalar& a) const {
        if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
        return Scalar(1) / a;
    }
    bool is_zero(const Scalar& a) const { return a.is_zero(); }
};

bool is_prime(std::int64_t n);

/// Arithmetic in F_p, values kept in [0, p).
class PrimeField {
public:
    using Scalar = std::int64_t;

    explicit PrimeField(std::int64_t p) : p_(p) {
        if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "modulus is not prime: " + std::to_string(p));
        if (p > (std::int64_t{1} << 31)) throw Error(ErrorKind::InvalidArgument, "prime too large");
    }

    std::int64_t prime() const { return p_; }

    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    Scalar reduce(std::int64_t a) const {
        a %= p_;
        return a < 0 ? a + p_ : a;
    }
    Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
    Scalar sub(Scalar a, Scalar b) const { return (a - b + p_) % p_; }
    Scalar mul(Scalar a, Scalar b) const { return (a * b) % p_; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar inv(Scalar a) const {
        if (a % p_ == 0) throw Error(ErrorKind::InvalidArgument, "division by zero in F_p");
        // Fermat: a^(p-2)
        Scalar result = 1, base = reduce(a);
        for (std::int64_t e = p_ - 2; e > 0; e >>= 1) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
        }
        return result;
    }
    bool is_zero(Scalar a) const { return a % p_ == 0; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::int64_t p_;
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Reduced row echelon form with pivot columns, first nonzero entry as pivot.
template <class Field>
struct RowEchelon {
    Matrix<typename Field::Scalar> reduced;
    std::vector<Eigen::Index> pivot_columns;

    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_columns.size()); }
};

template <class Field>
RowEchelon<Field> row_echelon(Matrix<typename Field::Scalar> m, const Field& field) {
    RowEchelon<Field> out;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index pivot = -1;
        for (Eigen::Index k = r; k < rows; ++k)
            if (!field.is_zero(m(k, c))) { pivot = k; break; }
        if (pivot < 0) continue;
        if (pivot != r) m.row(pivot).swap(m.row(r));
        const auto scale = field.inv(m(r, c));
        for (Eigen::Index j = c; j < cols; ++j) m(r, j) = field.mul(m(r, j), scale);
        for (Eigen::Index k = 0; k < rows; ++k) {
            if (k == r || field.is_zero(m(k, c))) continue;
            const auto factor = m(k, c);
            for (Eigen::Index j = c; j < cols; ++j)
                m(k, j) = field.sub(m(k, j), field.mul(factor, m(r, j)));
        }
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

template <class Field>
Eigen::Index rank(const Matrix<typename Field::Scalar>& m, const Field& field) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return row_echelon(m, field).rank();
}

inline Eigen::Index rank(const Matrix<Rational>& m) { return rank(m, RationalField{}); }

/// Null space basis as the columns of the returned matrix, one column per free
/// variable in increasing column order.
template <class Field>
Matrix<typename Field::Scalar> kernel_basis(const Matrix<typename Field::Scalar>& m, const Field& field) {
    using Scalar = typename Field::Scalar;
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0) {
        Matrix<Scalar> id(cols, cols);
        for (Eigen::Index i = 0; i < cols; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) id(i, j) = i == j ? field.one() : field.zero();
        return id;
    }
    const auto ech = row_echelon(m, field);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (auto c : ech.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;

    Matrix<Scalar> basis(cols, cols - ech.rank());
    for (Eigen::Index i = 0; i < basis.rows(); ++i)
        for (Eigen::Index j = 0; j < basis.cols(); ++j) basis(i, j) = field.zero();
    Eigen::Index k = 0;
    for (Eigen::Index free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        basis(free, k) = field.one();
        for (Eigen::Index r = 0; r < ech.rank(); ++r)
            basis(ech.pivot_columns[static_cast<std::size_t>(r)], k) = field.neg(ech.reduced(r, free));
        ++k;
    }
    return basis;
}

/// Product of two matrices over the given field.
template <class Field>
Matrix<typename Field::Scalar> multiply(const Matrix<typename Field::Scalar>& a,
                                        const Matrix<typename Field::Scalar>& b, const Field& field) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch in product");
    Matrix<typename Field::Scalar> out(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            auto acc = field.zero();
            for (Eigen::Index k = 0; k < a.cols(); ++k) acc = field.add(acc, field.mul(a(i, k), b(k, j)));
            out(i, j) = acc;
        }
    return out;
}

template <class Field>
Matrix<typename Field::Scalar> identity(Eigen::Index n, const Field& field) {
    Matrix<typename Field::Scalar> id(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) id(i, j) = i == j ? field.one() : field.zero();
    return id;
}

/// Inverse of a square matrix; throws InvalidArgument when singular.
template <class Field>
Matrix<typename Field::Scalar> inverse(const Matrix<typename Field::Scalar>& m, const Field& field) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw Error(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
    Matrix<typename Field::Scalar> aug(n, 2 * n);
    aug.leftCols(n) = m;
    aug.rightCols(n) = identity(n, field);
    const auto ech = row_echelon(aug, field);
    if (ech.rank() < n || (n > 0 && ech.pivot_columns.back() >= n))
        throw Error(ErrorKind::InvalidArgument, "matrix is singular");
    return ech.reduced.rightCols(n);
}

template <class Field>
bool is_zero_matrix(const Matrix<typename Field::Scalar>& m, const Field& field) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!field.is_zero(m(i, j))) return false;
    return true;
}

/// Converts an integer matrix entrywise into the field.
template <class Field, class Int>
Matrix<typename Field::Scalar> lift(const Matrix<Int>& m, const Field& field) {
    Matrix<typename Field::Scalar> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if constexpr (std::is_same_v<Field, PrimeField>)
                out(i, j) = field.reduce(static_cast<std::int64_t>(m(i, j)));
            else if constexpr (std::is_same_v<Int, Integer>)
                out(i, j) = to_rational(m(i, j));
            else
                out(i, j) = typename Field::Scalar(m(i, j));
        }
    return out;
}

}  // namespace quiverkit
