#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strengthlab/field.hpp"
#include "strengthlab/linalg.hpp"

namespace strengthlab {

/// Partition of the factor set [0,d) into two nonempty halves I and J.
/// Indices are 0-based throughout (the usual off-by-one from written math).
struct IndexPartition {
    std::vector<uint32_t> I;
    std::vector<uint32_t> J;

    static IndexPartition from_I(const std::vector<uint32_t>& I, uint32_t d);
};

/// Dense d-linear form on V_1 x ... x V_d, coefficients indexed
/// lexicographically by (i_1,...,i_d) with the last index fastest.
class MultilinearForm {
  public:
    MultilinearForm(FieldRef fld, std::vector<uint32_t> shape);

    const FieldRef& field_ref() const { return fld_; }
    const Field& field() const { return *fld_; }
    const std::vector<uint32_t>& shape() const { return shape_; }
    uint32_t order() const { return static_cast<uint32_t>(shape_.size()); }
    size_t total_size() const { return coeffs_.size(); }

    FieldElem coeff(const std::vector<uint32_t>& idx) const { return coeffs_[flat(idx)]; }
    void set_coeff(const std::vector<uint32_t>& idx, FieldElem c) { coeffs_[flat(idx)] = c; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }
    std::vector<FieldElem>& coeffs_mut() { return coeffs_; }

    size_t flat(const std::vector<uint32_t>& idx) const;
    std::vector<uint32_t> unflat(size_t flat_idx) const;

    bool is_zero() const;
    MultilinearForm add(const MultilinearForm& other) const;
    MultilinearForm sub(const MultilinearForm& other) const;
    MultilinearForm scale(FieldElem c) const;
    bool operator==(const MultilinearForm& other) const;

    /// Coefficients mapped through an embedding into a bigger field.
    MultilinearForm embedded(const Embedding& emb) const;

  private:
    FieldRef fld_;
    std::vector<uint32_t> shape_;
    std::vector<FieldElem> coeffs_;
};

/// Generators (I_i, P_{I_i}) of a tensor ideal: the linear span of all
/// sums P_{I_i} * Q_{J_i} over free cofactors Q on the complementary slots.
struct TensorIdealGens {
    struct Gen {
        std::vector<uint32_t> I;  // sorted factor indices the generator lives on
        MultilinearForm form;     // shape = the selected dims of the full shape
    };
    std::vector<Gen> gens;
};

struct IdealMembership {
    bool member = false;
    std::vector<MultilinearForm> cofactors;  // one per generator, on the J-slots
};

FieldElem eval(const MultilinearForm& P, const std::vector<std::vector<FieldElem>>& vectors);

/// P = P_I * P_J on the full shape determined by the partition.
MultilinearForm outer_product(const MultilinearForm& P_I, const MultilinearForm& P_J,
                              const IndexPartition& part);

/// P with slot `factor` restricted to the span of the given independent
/// vectors, expressed in that basis.
MultilinearForm restrict_factor(const MultilinearForm& P, uint32_t factor,
                                const std::vector<std::vector<FieldElem>>& basis);

/// Exact decision of Definition-style tensor-ideal membership: solvability of
/// the linear system P = sum_i P_{I_i} * Q_{J_i} in the cofactors Q.
IdealMembership ideal_membership(const MultilinearForm& P, const TensorIdealGens& gens);

/// The linear forms (I = {factor}) cutting out the subspace: a form restricts
/// to zero on the subspace iff it lies in the ideal these generate.
TensorIdealGens kernel_of_restriction(FieldRef fld, const std::vector<uint32_t>& shape,
                                      uint32_t factor,
                                      const std::vector<std::vector<FieldElem>>& basis);

}  // namespace strengthlab
