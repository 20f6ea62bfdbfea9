#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace addcomb {

/// Position of an element in the fixed enumeration of its group.
using elem_index = std::uint32_t;

/// Element as a coordinate vector, one entry per cyclic factor.
using Coords = std::vector<std::int64_t>;

// Finite abelian group Z/n1 x ... x Z/nm. Elements are addressed by a
// mixed-radix index with the first factor most significant, so ascending
// index order equals lexicographic coordinate order. That index order is
// the canonical total order used by every greedy procedure in the library.
class GroupSpec {
  public:
    static constexpr std::uint64_t default_size_cap = std::uint64_t{1} << 24;

    GroupSpec() = default; // trivial group, N = 1

    explicit GroupSpec(std::vector<std::int64_t> orders, std::uint64_t size_cap = default_size_cap)
        : orders_(std::move(orders)) {
        std::uint64_t n = 1;
        for (const auto o : orders_) {
            if (o < 1) throw std::invalid_argument("GroupSpec: cyclic order must be >= 1, got " + std::to_string(o));
            if (n > size_cap / static_cast<std::uint64_t>(o))
                throw capacity_error("GroupSpec: group size exceeds cap " + std::to_string(size_cap));
            n *= static_cast<std::uint64_t>(o);
        }
        size_ = n;
        radix_.assign(orders_.size(), 1);
        for (std::size_t i = orders_.size(); i-- > 1;)
            radix_[i - 1] = radix_[i] * static_cast<std::uint64_t>(orders_[i]);
    }

    const std::vector<std::int64_t>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    std::uint64_t size() const { return size_; }

    bool all_orders_two() const {
        for (const auto o : orders_)
            if (o != 2) return false;
        return true;
    }

    bool operator==(const GroupSpec& o) const { return orders_ == o.orders_; }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

    elem_index zero() const { return 0; }

    elem_index add(elem_index x, elem_index y) const {
        check_index(x);
        check_index(y);
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::uint64_t n = static_cast<std::uint64_t>(orders_[i]);
            const std::uint64_t r = radix_[i];
            std::uint64_t d = (x / r) % n + (y / r) % n;
            if (d >= n) d -= n;
            out += d * r;
        }
        return static_cast<elem_index>(out);
    }

    elem_index neg(elem_index x) const {
        check_index(x);
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::uint64_t n = static_cast<std::uint64_t>(orders_[i]);
            const std::uint64_t r = radix_[i];
            const std::uint64_t d = (x / r) % n;
            out += (d == 0 ? 0 : n - d) * r;
        }
        return static_cast<elem_index>(out);
    }

    elem_index sub(elem_index x, elem_index y) const { return add(x, neg(y)); }

    /// Unit-modulus pairing e(xi . x) with xi . x = sum_i xi_i x_i / n_i.
    /// Bilinear: character(xi, x + y) = character(xi, x) * character(xi, y).
    std::complex<double> character(elem_index xi, elem_index x) const {
        check_index(xi);
        check_index(x);
        double t = 0.0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::uint64_t n = static_cast<std::uint64_t>(orders_[i]);
            const std::uint64_t r = radix_[i];
            const std::uint64_t p = ((xi / r) % n) * ((x / r) % n) % n;
            t += static_cast<double>(p) / static_cast<double>(n);
        }
        const double ang = 2.0 * M_PI * t;
        return {std::cos(ang), std::sin(ang)};
    }

    /// Reduces arbitrary integer coordinates into the group and encodes them.
    elem_index encode(const Coords& coords) const {
        if (coords.size() != orders_.size())
            throw std::invalid_argument("GroupSpec: coordinate arity mismatch");
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::int64_t n = orders_[i];
            std::int64_t c = coords[i] % n;
            if (c < 0) c += n;
            out += static_cast<std::uint64_t>(c) * radix_[i];
        }
        return static_cast<elem_index>(out);
    }

    Coords decode(elem_index x) const {
        check_index(x);
        Coords coords(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i)
            coords[i] = static_cast<std::int64_t>((x / radix_[i]) % static_cast<std::uint64_t>(orders_[i]));
        return coords;
    }

    void check_index(elem_index x) const {
        if (x >= size_) throw std::out_of_range("GroupSpec: element index " + std::to_string(x) +
                                                " out of range [0," + std::to_string(size_) + ")");
    }

  private:
    std::vector<std::int64_t> orders_;
    std::vector<std::uint64_t> radix_; // radix_[i] = product of orders after i
    std::uint64_t size_ = 1;
};

inline void check_same_group(const GroupSpec& a, const GroupSpec& b) {
    if (a != b) throw std::invalid_argument("operands live in different groups");
}

} // namespace addcomb
