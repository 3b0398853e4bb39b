#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "strengthlab/field.hpp"

namespace strengthlab {

using Expo = std::vector<uint16_t>;

/// Sparse multivariate polynomial over a field: exponent vector -> nonzero
/// coefficient. Terms are kept in lexicographic order, which makes every
/// iteration (and hence every emitted file and report) deterministic.
class Poly {
  public:
    Poly(FieldRef fld, uint32_t nvars);

    static Poly constant(FieldRef fld, uint32_t nvars, FieldElem c);
    static Poly variable(FieldRef fld, uint32_t nvars, uint32_t i);
    static Poly monomial(FieldRef fld, uint32_t nvars, const Expo& e, FieldElem c);

    const FieldRef& field_ref() const { return fld_; }
    const Field& field() const { return *fld_; }
    uint32_t nvars() const { return n_; }
    const std::map<Expo, FieldElem>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    /// Total degree; 0 for the zero polynomial.
    uint32_t degree() const;
    bool is_homogeneous(uint32_t* deg_out = nullptr) const;

    FieldElem coeff(const Expo& e) const;
    void add_term(const Expo& e, FieldElem c);  // accumulates, drops zeros

    Poly add(const Poly& o) const;
    Poly sub(const Poly& o) const;
    Poly neg() const;
    Poly mul(const Poly& o) const;
    Poly scale(FieldElem c) const;
    bool operator==(const Poly& o) const;

    FieldElem eval(const std::vector<FieldElem>& point) const;

    /// Formal partial derivative.
    Poly derivative(uint32_t var) const;

    /// Substitute x_i = sum_j M[i][j] y_j (M is nvars x m); result in m vars.
    Poly compose_linear(const std::vector<std::vector<FieldElem>>& M, uint32_t m) const;

    /// Same polynomial over a bigger variable set; existing variables keep
    /// their index shifted by `offset`.
    Poly lift(uint32_t new_nvars, uint32_t offset) const;

    /// Substitute constants for the contiguous variable block
    /// [offset, offset + vals.size()); the result lives on the remaining
    /// variables in their original order.
    Poly eval_block(uint32_t offset, const std::vector<FieldElem>& vals) const;

    Poly embedded(const Embedding& emb) const;

    /// Human-readable rendering, e.g. "2*x0^3 + x1*x2".
    std::string to_string() const;

  private:
    FieldRef fld_;
    uint32_t n_;
    std::map<Expo, FieldElem> terms_;
};

/// Degree-d form: a Poly whose every term has total degree exactly d.
/// The degree is declared, so the zero form still knows d.
class HomogeneousPoly {
  public:
    HomogeneousPoly(FieldRef fld, uint32_t nvars, uint32_t degree);
    /// Validates homogeneity of `p` against the declared degree.
    HomogeneousPoly(Poly p, uint32_t degree);

    const Poly& poly() const { return p_; }
    const FieldRef& field_ref() const { return p_.field_ref(); }
    const Field& field() const { return p_.field(); }
    uint32_t nvars() const { return p_.nvars(); }
    uint32_t degree() const { return d_; }
    bool is_zero() const { return p_.is_zero(); }

    void add_term(const Expo& e, FieldElem c);
    FieldElem coeff(const Expo& e) const { return p_.coeff(e); }
    FieldElem eval(const std::vector<FieldElem>& point) const { return p_.eval(point); }

    HomogeneousPoly add(const HomogeneousPoly& o) const;
    HomogeneousPoly sub(const HomogeneousPoly& o) const;
    HomogeneousPoly scale(FieldElem c) const { return HomogeneousPoly(p_.scale(c), d_); }
    /// Product of forms of degrees d1, d2 has degree d1 + d2.
    HomogeneousPoly mul(const HomogeneousPoly& o) const;
    bool operator==(const HomogeneousPoly& o) const { return d_ == o.d_ && p_ == o.p_; }

    HomogeneousPoly embedded(const Embedding& emb) const {
        return HomogeneousPoly(p_.embedded(emb), d_);
    }

  private:
    Poly p_;
    uint32_t d_;
};

}  // namespace strengthlab
