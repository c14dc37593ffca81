// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// min <C, X>  s.t.  A svec(X) = b,  X block-diagonal PSD.
///
/// Symmetric matrices are stored in scaled upper-triangle form (svec): the
/// off-diagonal entries carry a factor sqrt(2) so that the trace inner
/// product of two symmetric matrices equals the dot product of their svec
/// images.  Every constraint row is a symmetric matrix in the same encoding.
struct SDPProblem {
    std::vector<std::size_t> block_dims;
    std::vector<MatrixXr> C;  // one symmetric matrix per block
    Eigen::SparseMatrix<double, Eigen::RowMajor> A;
    VectorXr b;

    [[nodiscard]] std::size_t block_count() const { return block_dims.size(); }

    [[nodiscard]] std::size_t block_offset(std::size_t k) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < k; ++i) off += block_dims[i] * (block_dims[i] + 1) / 2;
        return off;
    }

    [[nodiscard]] std::size_t variable_count() const { return block_offset(block_dims.size()); }

    /// svec coordinate of symmetric element (i, j) of block k.
    [[nodiscard]] std::size_t svec_index(std::size_t k, std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        if (j >= block_dims[k]) throw std::out_of_range("svec_index: element outside block");
        return block_offset(k) + j * (j + 1) / 2 + i;
    }

    [[nodiscard]] std::size_t constraint_count() const {
        return static_cast<std::size_t>(A.rows());
    }
};

/// Dense symmetric blocks <-> svec vector.
[[nodiscard]] inline VectorXr svec_pack(const std::vector<MatrixXr>& blocks) {
    static const double rt2 = std::sqrt(2.0);
    std::size_t n = 0;
    for (const auto& blk : blocks)
        n += static_cast<std::size_t>(blk.rows()) * (static_cast<std::size_t>(blk.rows()) + 1) / 2;
    VectorXr v(static_cast<Eigen::Index>(n));
    Eigen::Index at = 0;
    for (const auto& blk : blocks)
        for (Eigen::Index j = 0; j < blk.rows(); ++j)
            for (Eigen::Index i = 0; i <= j; ++i) v(at++) = i == j ? blk(i, j) : rt2 * blk(i, j);
    return v;
}

[[nodiscard]] inline std::vector<MatrixXr> svec_unpack(const VectorXr& v,
                                                       const std::vector<std::size_t>& dims) {
    static const double rt2 = std::sqrt(2.0);
    std::vector<MatrixXr> blocks;
    blocks.reserve(dims.size());
    Eigen::Index at = 0;
    for (const std::size_t d : dims) {
        MatrixXr blk(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (Eigen::Index j = 0; j < blk.rows(); ++j)
            for (Eigen::Index i = 0; i <= j; ++i) {
                const double x = v(at++);
                blk(i, j) = blk(j, i) = i == j ? x : x / rt2;
            }
        blocks.push_back(std::move(blk));
    }
    if (at != v.size()) throw std::invalid_argument("svec_unpack: length mismatch");
    return blocks;
}

/// Incremental builder: accumulates rows as symmetric-element coefficients
/// and converts to the svec encoding on finish().
class SDPProblemBuilder {
public:
    explicit SDPProblemBuilder(std::vector<std::size_t> dims) {
        prob_.block_dims = std::move(dims);
        for (const std::size_t d : prob_.block_dims)
            prob_.C.emplace_back(MatrixXr::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d)));
    }

    /// Adds c times symmetric element (i, j) of block k to the cost.
    void cost(std::size_t k, std::size_t i, std::size_t j, double c) {
        prob_.C[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += i == j ? c : c / 2;
        if (i != j)
            prob_.C[k](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += c / 2;
    }

    /// Opens a new constraint row with right-hand side rhs; returns its index.
    std::size_t new_row(double rhs) {
        rhs_.push_back(rhs);
        return rhs_.size() - 1;
    }

    [[nodiscard]] std::size_t rows() const { return rhs_.size(); }

    /// Adds c times symmetric element (i, j) of block k to the current row.
    void entry(std::size_t k, std::size_t i, std::size_t j, double c) {
        static const double rt2 = std::sqrt(2.0);
        const auto row = static_cast<int>(rhs_.size()) - 1;
        if (row < 0) throw std::logic_error("SDPProblemBuilder: entry before new_row");
        const auto col = static_cast<int>(prob_.svec_index(k, i, j));
        trips_.emplace_back(row, col, i == j ? c : c / rt2);
    }

    [[nodiscard]] SDPProblem finish() {
        SDPProblem out = std::move(prob_);
        out.A.resize(static_cast<Eigen::Index>(rhs_.size()),
                     static_cast<Eigen::Index>(out.variable_count()));
        out.A.setFromTriplets(trips_.begin(), trips_.end());
        out.A.makeCompressed();
        out.b = Eigen::Map<const VectorXr>(rhs_.data(), static_cast<Eigen::Index>(rhs_.size()));
        return out;
    }

private:
    SDPProblem prob_;
    std::vector<Eigen::Triplet<double>> trips_;
    std::vector<double> rhs_;
};

/// Plain-text interchange: block sizes, cost triplets (block i j value),
/// constraint triplets (row svec-coordinate value), right-hand side.
inline void dump_problem(const SDPProblem& p, std::ostream& os) {
    os << "sdp 1\n";
    os << "blocks " << p.block_count();
    for (const std::size_t d : p.block_dims) os << ' ' << d;
    os << '\n';
    os.precision(17);
    for (std::size_t k = 0; k < p.block_count(); ++k)
        for (Eigen::Index j = 0; j < p.C[k].rows(); ++j)
            for (Eigen::Index i = 0; i <= j; ++i)
                if (p.C[k](i, j) != 0.0)
                    os << "c " << k << ' ' << i << ' ' << j << ' ' << p.C[k](i, j) << '\n';
    for (Eigen::Index r = 0; r < p.A.rows(); ++r)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(p.A, r); it; ++it)
            os << "a " << r << ' ' << it.col() << ' ' << it.value() << '\n';
    for (Eigen::Index r = 0; r < p.b.size(); ++r) os << "b " << r << ' ' << p.b(r) << '\n';
    os << "rows " << p.A.rows() << '\n';
}

inline void dump_problem(const SDPProblem& p, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("dump_problem: cannot open " + path);
    dump_problem(p, f);
}

[[nodiscard]] inline SDPProblem load_problem(std::istream& is) {
    std::string tag;
    int version = 0;
    if (!(is >> tag >> version) || tag != "sdp" || version != 1)
        throw std::runtime_error("load_problem: bad header");
    std::size_t nb = 0;
    if (!(is >> tag >> nb) || tag != "blocks") throw std::runtime_error("load_problem: bad blocks");
    std::vector<std::size_t> dims(nb);
    for (auto& d : dims) is >> d;
    SDPProblem p;
    p.block_dims = dims;
    for (const std::size_t d : dims)
        p.C.emplace_back(
            MatrixXr::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> rhs;
    std::size_t rows = 0;
    while (is >> tag) {
        if (tag == "c") {
            std::size_t k, i, j;
            double v;
            is >> k >> i >> j >> v;
            p.C[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            p.C[k](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        } else if (tag == "a") {
            std::size_t r, col;
            double v;
            is >> r >> col >> v;
            trips.emplace_back(static_cast<int>(r), static_cast<int>(col), v);
        } else if (tag == "b") {
            std::size_t r;
            double v;
            is >> r >> v;
            if (rhs.size() <= r) rhs.resize(r + 1, 0.0);
            rhs[r] = v;
        } else if (tag == "rows") {
            is >> rows;
        } else {
            throw std::runtime_error("load_problem: unknown tag " + tag);
        }
    }
    if (rhs.size() < rows) rhs.resize(rows, 0.0);
    p.A.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p.variable_count()));
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.A.makeCompressed();
    p.b = Eigen::Map<const VectorXr>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    return p;
}

[[nodiscard]] inline SDPProblem load_problem(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_problem: cannot open " + path);
    return load_problem(f);
}

}  // namespace rdmkit
