#pragma once

// The truncated product A = prod_{n in S} A_n, A_n = M_n(F)^{a_n}, and the
// two generators e, sigma of B = F<e, sigma>.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "affsim/errors.hpp"
#include "affsim/linalg.hpp"
#include "affsim/scalar.hpp"

namespace affsim {

/// Key of one matrix factor: dimension n and copy index 1 <= index <= a_n.
struct Component {
    int n = 0;
    int index = 0;

    friend auto operator<=>(const Component&, const Component&) = default;
};

inline std::string to_string(const Component& c) {
    return std::to_string(c.n) + "," + std::to_string(c.index);
}

template <ExactField S>
struct SupportEntry {
    int n = 0;
    int count = 0;
    std::vector<S> lambdas;

    friend bool operator==(const SupportEntry&, const SupportEntry&) = default;
};

/// Every violated invariant of an entry list; empty means valid.
template <ExactField S>
std::vector<std::string> validate_entries(const std::vector<SupportEntry<S>>& entries) {
    std::vector<std::string> out;
    if (entries.empty()) out.emplace_back("support is empty");
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& en = entries[k];
        const std::string where = "entry " + std::to_string(k) + " (n=" + std::to_string(en.n) + ")";
        if (en.n < 2) out.push_back(where + ": dimension must be >= 2");
        if (en.count < 1) out.push_back(where + ": multiplicity must be >= 1");
        if (k > 0 && en.n <= entries[k - 1].n)
            out.push_back(where + ": dimensions must be strictly increasing (previous n=" +
                          std::to_string(entries[k - 1].n) + ")");
        if (static_cast<int>(en.lambdas.size()) != en.count)
            out.push_back(where + ": expected " + std::to_string(en.count) + " lambdas, got " +
                          std::to_string(en.lambdas.size()));
        for (std::size_t i = 0; i < en.lambdas.size(); ++i) {
            if (is_zero(en.lambdas[i])) out.push_back(where + ": lambda_" + std::to_string(i + 1) + " is zero");
            for (std::size_t j = 0; j < i; ++j)
                if (en.lambdas[i] * en.lambdas[i] == en.lambdas[j] * en.lambdas[j])
                    out.push_back(where + ": lambda_" + std::to_string(j + 1) + " = " + to_string(en.lambdas[j]) +
                                  " and lambda_" + std::to_string(i + 1) + " = " + to_string(en.lambdas[i]) +
                                  " are not distinct up to sign");
        }
    }
    return out;
}

template <ExactField S>
class SupportSpec;

template <ExactField S>
using SpecPtr = std::shared_ptr<const SupportSpec<S>>;

/// Finite support together with its lambda assignment. Immutable; always
/// handled through SpecPtr so elements can share it.
template <ExactField S>
class SupportSpec {
public:
    /// Throws ValidationError listing every violated invariant.
    static SpecPtr<S> create(std::vector<SupportEntry<S>> entries) {
        if (auto violations = validate_entries(entries); !violations.empty())
            throw ValidationError(std::move(violations));
        return SpecPtr<S>(new SupportSpec(std::move(entries)));
    }

    const std::vector<SupportEntry<S>>& entries() const noexcept { return entries_; }
    const std::vector<Component>& components() const noexcept { return components_; }

    /// D = sum a_n n^2.
    Index dimension() const noexcept { return dimension_; }
    std::uint64_t characteristic() const noexcept { return characteristic_; }
    int max_n() const noexcept { return entries_.back().n; }

    std::vector<int> support() const {
        std::vector<int> s;
        for (const auto& en : entries_) s.push_back(en.n);
        return s;
    }

    bool contains(int n) const noexcept {
        return std::any_of(entries_.begin(), entries_.end(), [n](const auto& en) { return en.n == n; });
    }

    const SupportEntry<S>& entry(int n) const {
        for (const auto& en : entries_)
            if (en.n == n) return en;
        throw DomainError("dimension " + std::to_string(n) + " is not in the support");
    }

    /// Position of the component in components().
    std::size_t block_index(const Component& c) const {
        const auto it = std::lower_bound(components_.begin(), components_.end(), c);
        if (it == components_.end() || *it != c) throw LookupError("no component (" + to_string(c) + ") in spec");
        return static_cast<std::size_t>(it - components_.begin());
    }

    /// First flat coordinate of the component's block.
    Index offset(const Component& c) const { return offsets_[block_index(c)]; }

    const S& lambda(const Component& c) const {
        block_index(c);
        return entry(c.n).lambdas[static_cast<std::size_t>(c.index - 1)];
    }

    friend bool operator==(const SupportSpec& a, const SupportSpec& b) {
        return a.characteristic_ == b.characteristic_ && a.entries_ == b.entries_;
    }

private:
    explicit SupportSpec(std::vector<SupportEntry<S>> entries)
        : entries_(std::move(entries)), characteristic_(FieldTraits<S>::characteristic()) {
        for (const auto& en : entries_)
            for (int i = 1; i <= en.count; ++i) {
                components_.push_back({en.n, i});
                offsets_.push_back(dimension_);
                dimension_ += static_cast<Index>(en.n) * en.n;
            }
    }

    std::vector<SupportEntry<S>> entries_;
    std::vector<Component> components_;
    std::vector<Index> offsets_;
    Index dimension_ = 0;
    std::uint64_t characteristic_ = 0;
};

template <ExactField S>
bool same_spec(const SpecPtr<S>& a, const SpecPtr<S>& b) {
    return a == b || (a && b && *a == *b);
}

/// lambda_{n,i} = i. Over F_p this needs p > 2 max(a_n) so that 1..a_n stay
/// inside (0, p/2) and remain distinct up to sign.
template <ExactField S>
std::vector<std::vector<S>> default_lambda_scheme(const std::vector<std::pair<int, int>>& dims_and_counts) {
    const std::uint64_t p = FieldTraits<S>::characteristic();
    int max_count = 0;
    for (const auto& [n, a] : dims_and_counts) {
        if (a < 1) throw DomainError("multiplicity for n=" + std::to_string(n) + " must be >= 1");
        max_count = std::max(max_count, a);
    }
    if (p != 0 && p <= 2 * static_cast<std::uint64_t>(max_count))
        throw FieldTooSmallError("F_" + std::to_string(p) + " is too small for the default lambda scheme: need p > " +
                                 std::to_string(2 * max_count));
    std::vector<std::vector<S>> out;
    for (const auto& [n, a] : dims_and_counts) {
        auto& lams = out.emplace_back();
        for (int i = 1; i <= a; ++i) lams.emplace_back(i);
    }
    return out;
}

/// Spec from (n, a_n) pairs with the default lambda scheme.
template <ExactField S>
SpecPtr<S> make_spec(const std::vector<std::pair<int, int>>& dims_and_counts) {
    auto lambdas = default_lambda_scheme<S>(dims_and_counts);
    std::vector<SupportEntry<S>> entries;
    for (std::size_t k = 0; k < dims_and_counts.size(); ++k)
        entries.push_back({dims_and_counts[k].first, dims_and_counts[k].second, std::move(lambdas[k])});
    return SupportSpec<S>::create(std::move(entries));
}

/// Element of A: one n x n block per component, in component order.
template <ExactField S>
class BlockElement {
public:
    BlockElement(SpecPtr<S> spec, std::vector<Matrix<S>> blocks) : spec_(std::move(spec)), blocks_(std::move(blocks)) {
        const auto& comps = spec_->components();
        if (blocks_.size() != comps.size())
            throw ShapeError("BlockElement: expected " + std::to_string(comps.size()) + " blocks, got " +
                             std::to_string(blocks_.size()));
        for (std::size_t k = 0; k < comps.size(); ++k)
            if (blocks_[k].rows() != comps[k].n || blocks_[k].cols() != comps[k].n)
                throw ShapeError("BlockElement: block (" + to_string(comps[k]) + ") has wrong shape");
    }

    static BlockElement zero(SpecPtr<S> spec) {
        std::vector<Matrix<S>> blocks;
        for (const auto& c : spec->components()) blocks.push_back(zero_matrix<S>(c.n, c.n));
        return BlockElement(std::move(spec), std::move(blocks));
    }

    static BlockElement identity(SpecPtr<S> spec) {
        std::vector<Matrix<S>> blocks;
        for (const auto& c : spec->components()) blocks.push_back(identity_matrix<S>(c.n));
        return BlockElement(std::move(spec), std::move(blocks));
    }

    /// Element with a single nonzero block.
    static BlockElement single(SpecPtr<S> spec, const Component& c, Matrix<S> block) {
        auto x = zero(spec);
        x.block(c) = std::move(block);
        if (x.block(c).rows() != c.n || x.block(c).cols() != c.n) throw ShapeError("single: block has wrong shape");
        return x;
    }

    const SupportSpec<S>& spec() const noexcept { return *spec_; }
    const SpecPtr<S>& spec_ptr() const noexcept { return spec_; }
    const std::vector<Matrix<S>>& blocks() const noexcept { return blocks_; }

    const Matrix<S>& block(const Component& c) const { return blocks_[spec_->block_index(c)]; }
    Matrix<S>& block(const Component& c) { return blocks_[spec_->block_index(c)]; }

    bool is_zero() const {
        return std::all_of(blocks_.begin(), blocks_.end(), [](const Matrix<S>& b) { return affsim::is_zero(b); });
    }

    BlockElement& operator+=(const BlockElement& o) {
        check_same(o);
        for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
        return *this;
    }
    BlockElement& operator-=(const BlockElement& o) {
        check_same(o);
        for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
        return *this;
    }
    BlockElement& operator*=(const S& s) {
        for (auto& b : blocks_) b *= s;
        return *this;
    }

    friend BlockElement operator+(BlockElement a, const BlockElement& b) { return a += b; }
    friend BlockElement operator-(BlockElement a, const BlockElement& b) { return a -= b; }
    friend BlockElement operator*(BlockElement a, const S& s) { return a *= s; }
    friend BlockElement operator*(const S& s, BlockElement a) { return a *= s; }
    friend BlockElement operator-(BlockElement a) { return a *= S(-1); }

    friend BlockElement operator*(const BlockElement& a, const BlockElement& b) {
        a.check_same(b);
        std::vector<Matrix<S>> out;
        out.reserve(a.blocks_.size());
        for (std::size_t k = 0; k < a.blocks_.size(); ++k) out.push_back(mat_mul(a.blocks_[k], b.blocks_[k]));
        return BlockElement(a.spec_, std::move(out));
    }

    friend bool operator==(const BlockElement& a, const BlockElement& b) {
        return same_spec(a.spec_, b.spec_) && a.blocks_ == b.blocks_;
    }

private:
    void check_same(const BlockElement& o) const {
        if (!same_spec(spec_, o.spec_)) throw StructuralError("block elements belong to different support specs");
    }

    SpecPtr<S> spec_;
    std::vector<Matrix<S>> blocks_;
};

template <ExactField S>
BlockElement<S> pow(const BlockElement<S>& x, unsigned k) {
    auto result = BlockElement<S>::identity(x.spec_ptr());
    auto base = x;
    while (k != 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k != 0) base = base * base;
    }
    return result;
}

/// theta_{n,i}: the (n, i) block of x, copied.
template <ExactField S>
Matrix<S> theta(const BlockElement<S>& x, int n, int i) {
    return x.block(Component{n, i});
}

/// True when pi_n(x) = 0, i.e. every block of dimension n vanishes.
template <ExactField S>
bool vanishes_at(const BlockElement<S>& x, int n) {
    const auto& comps = x.spec().components();
    for (std::size_t k = 0; k < comps.size(); ++k)
        if (comps[k].n == n && !is_zero(x.blocks()[k])) return false;
    return true;
}

/// Coordinates in blocks-in-component-order, row-major within a block.
template <ExactField S>
Vector<S> flatten(const BlockElement<S>& x) {
    Vector<S> v(x.spec().dimension());
    Index pos = 0;
    for (const auto& b : x.blocks())
        for (Index r = 0; r < b.rows(); ++r)
            for (Index c = 0; c < b.cols(); ++c) v(pos++) = b(r, c);
    return v;
}

template <ExactField S>
BlockElement<S> unflatten(const SpecPtr<S>& spec, const Vector<S>& v) {
    if (v.size() != spec->dimension())
        throw ShapeError("unflatten: expected " + std::to_string(spec->dimension()) + " coordinates, got " +
                         std::to_string(v.size()));
    std::vector<Matrix<S>> blocks;
    Index pos = 0;
    for (const auto& comp : spec->components()) {
        Matrix<S> b(comp.n, comp.n);
        for (Index r = 0; r < comp.n; ++r)
            for (Index c = 0; c < comp.n; ++c) b(r, c) = v(pos++);
        blocks.push_back(std::move(b));
    }
    return BlockElement<S>(spec, std::move(blocks));
}

/// n x n matrix with ones at (j, j+1) and (n, 1): sends e_1 to e_n and e_j to e_{j-1}.
template <ExactField S>
Matrix<S> cyclic_shift(int n) {
    Matrix<S> m = zero_matrix<S>(n, n);
    for (int j = 0; j + 1 < n; ++j) m(j, j + 1) = S(1);
    m(n - 1, 0) = S(1);
    return m;
}

template <ExactField S>
struct Generators {
    BlockElement<S> one;
    BlockElement<S> e;
    BlockElement<S> sigma;
};

template <ExactField S>
Generators<S> build_generators(const SpecPtr<S>& spec) {
    auto e = BlockElement<S>::zero(spec);
    auto sigma = BlockElement<S>::zero(spec);
    for (const auto& c : spec->components()) {
        e.block(c)(0, 0) = spec->lambda(c);
        sigma.block(c) = cyclic_shift<S>(c.n);
    }
    return {BlockElement<S>::identity(spec), std::move(e), std::move(sigma)};
}

}  // namespace affsim
