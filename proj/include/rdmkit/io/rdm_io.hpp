// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Text tensor container shared by all CLI commands.  One header line
///   rdmkit-rdm rank=<1|2> r=<modes> n=<particles> ordering=interleaved
///     normalization=pair
/// then the matrix row-major, one "re im" pair per element, one matrix row
/// per line.  rank 1 stores an r x r matrix, rank 2 an r^2 x r^2 one.
struct RdmHeader {
    std::size_t rank = 2;
    std::size_t r = 0;
    double n = 0.0;
    std::string ordering = "interleaved";
    std::string normalization = "pair";
};

namespace detail {

inline void write_rdm_matrix(std::ostream& os, const RdmHeader& h, const MatrixXc& m) {
    os << "rdmkit-rdm rank=" << h.rank << " r=" << h.r << " n=" << h.n
       << " ordering=" << h.ordering << " normalization=" << h.normalization << "\n";
    os.precision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j).real() << ' ' << m(i, j).imag();
        }
        os << "\n";
    }
}

inline std::pair<RdmHeader, MatrixXc> read_rdm_matrix(std::istream& is,
                                                      const std::string& what) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(what + ": empty file");
    std::istringstream hs(line);
    std::string magic;
    hs >> magic;
    if (magic != "rdmkit-rdm") throw std::runtime_error(what + ": not an rdmkit RDM file");
    RdmHeader h;
    std::string kv;
    while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::runtime_error(what + ": malformed header");
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "rank")
            h.rank = std::stoul(val);
        else if (key == "r")
            h.r = std::stoul(val);
        else if (key == "n")
            h.n = std::stod(val);
        else if (key == "ordering")
            h.ordering = val;
        else if (key == "normalization")
            h.normalization = val;
        else
            throw std::runtime_error(what + ": unknown header key " + key);
    }
    if (h.rank != 1 && h.rank != 2) throw std::runtime_error(what + ": unsupported rank");
    if (h.r == 0) throw std::runtime_error(what + ": missing mode count");
    if (h.ordering != "interleaved")
        throw std::runtime_error(what + ": unsupported ordering " + h.ordering);
    if (h.normalization != "pair")
        throw std::runtime_error(what + ": unsupported normalization " + h.normalization);
    const std::size_t side = h.rank == 1 ? h.r : h.r * h.r;
    MatrixXc m(side, side);
    for (std::size_t i = 0; i < side; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error(what + ": truncated matrix");
        std::istringstream rs(line);
        for (std::size_t j = 0; j < side; ++j) {
            double re = 0.0, im = 0.0;
            if (!(rs >> re >> im)) throw std::runtime_error(what + ": short matrix row");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex{re, im};
        }
    }
    return {h, std::move(m)};
}

}  // namespace detail

inline void save_two_rdm(const std::string& path, const TwoRDM& d2, double n) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_two_rdm: cannot open " + path);
    detail::write_rdm_matrix(os, RdmHeader{2, d2.r, n, "interleaved", "pair"}, d2.mat);
}

inline void save_one_rdm(const std::string& path, const OneRDM& d1, double n) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_one_rdm: cannot open " + path);
    detail::write_rdm_matrix(os, RdmHeader{1, d1.dim(), n, "interleaved", "pair"}, d1.mat);
}

[[nodiscard]] inline std::pair<TwoRDM, RdmHeader> load_two_rdm(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_two_rdm: cannot open " + path);
    auto [h, m] = detail::read_rdm_matrix(is, "load_two_rdm");
    if (h.rank != 2) throw std::runtime_error("load_two_rdm: file holds a rank-1 tensor");
    return {TwoRDM(h.r, std::move(m)), h};
}

[[nodiscard]] inline std::pair<OneRDM, RdmHeader> load_one_rdm(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_one_rdm: cannot open " + path);
    auto [h, m] = detail::read_rdm_matrix(is, "load_one_rdm");
    if (h.rank != 1) throw std::runtime_error("load_one_rdm: file holds a rank-2 tensor");
    return {OneRDM(std::move(m)), h};
}

}  // namespace rdmkit
