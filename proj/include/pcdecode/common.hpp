// SPDX-License-Identifier: Apache-2.0
//
// pcdecode: downlink interference decoding for pilot-contaminated massive MIMO
// Copyright (C) 2026 The pcdecode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PCDECODE_COMMON_HPP
#define PCDECODE_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcdecode
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point2 &a, const Point2 &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Dense rank-3 tensor of reals, row-major over (i0, i1, i2).
class Tensor3
{
  public:
    Tensor3() = default;
    Tensor3(std::size_t n0, std::size_t n1, std::size_t n2, double fill = 0.0)
        : n0_(n0), n1_(n1), n2_(n2), data_(n0 * n1 * n2, fill) {}

    double &operator()(std::size_t i0, std::size_t i1, std::size_t i2)
    {
        return data_[(i0 * n1_ + i1) * n2_ + i2];
    }
    double operator()(std::size_t i0, std::size_t i1, std::size_t i2) const
    {
        return data_[(i0 * n1_ + i1) * n2_ + i2];
    }

    std::size_t dim0() const { return n0_; }
    std::size_t dim1() const { return n1_; }
    std::size_t dim2() const { return n2_; }
    const std::vector<double> &data() const { return data_; }

  private:
    std::size_t n0_ = 0, n1_ = 0, n2_ = 0;
    std::vector<double> data_;
};

// Subset of cells {0, ..., L-1}, stored as a bitmask (L <= 32).
class CellSet
{
  public:
    static constexpr std::size_t max_cells = 32;

    CellSet() = default;
    explicit CellSet(std::uint32_t mask) : mask_(mask) {}
    CellSet(std::initializer_list<std::size_t> cells)
    {
        for (auto c : cells)
            insert(c);
    }

    static CellSet all(std::size_t n_cells)
    {
        if (n_cells > max_cells)
            throw std::invalid_argument("CellSet supports at most 32 cells.");
        return CellSet(n_cells == max_cells ? ~0u : ((1u << n_cells) - 1u));
    }

    void insert(std::size_t cell)
    {
        if (cell >= max_cells)
            throw std::invalid_argument("Cell index out of range for CellSet.");
        mask_ |= (1u << cell);
    }
    bool contains(std::size_t cell) const { return cell < max_cells && ((mask_ >> cell) & 1u); }
    bool empty() const { return mask_ == 0; }
    std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(mask_)); }
    std::uint32_t mask() const { return mask_; }
    bool is_subset_of(const CellSet &other) const { return (mask_ & ~other.mask_) == 0; }

    bool operator==(const CellSet &) const = default;

  private:
    std::uint32_t mask_ = 0;
};

// Identifies user U_{il}: pilot index i within cell l (both 0-based).
struct UserRef
{
    std::size_t pilot = 0;
    std::size_t cell = 0;
};

enum class Precoder
{
    MRT,
    ZF
};

std::string to_string(Precoder p);
Precoder precoder_from_string(const std::string &s);

// Neumaier-compensated accumulator.
class CompensatedSum
{
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum &operator+=(double x)
    {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log2(1 + snr), the Gaussian-input capacity in bits/s/Hz.
inline double gaussian_capacity(double snr) { return std::log2(1.0 + snr); }

// SplitMix64 finalizer; seeds independent generator streams from (base, stream).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Shortest round-trip decimal representation, locale independent.
std::string format_number(double x);

double db_to_linear(double db);
double linear_to_db(double lin);

} // namespace pcdecode

#endif
