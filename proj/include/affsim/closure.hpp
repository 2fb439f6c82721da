#pragma once

// Span-closure of a generating set inside A: a reduced-echelon linear basis of
// the subalgebra it generates, and membership with coefficient certificates.

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affsim/algebra.hpp"
#include "affsim/linalg.hpp"

namespace affsim {

template <ExactField S>
struct Membership {
    bool member = false;
    /// Coefficients over the basis rows; meaningful only when member.
    Vector<S> coefficients;
    /// First nonzero coordinate of the residue when not a member.
    std::optional<Index> residue_coordinate;
};

/// Linear subspace of A kept in reduced row-echelon form, leftmost pivots.
/// Produced by generate() for subalgebras; span() builds plain subspaces.
template <ExactField S>
class SubalgebraBasis {
public:
    explicit SubalgebraBasis(SpecPtr<S> spec)
        : spec_(std::move(spec)), row_of_pivot_(static_cast<std::size_t>(spec_->dimension()), -1) {}

    /// Basis of the linear span of the given elements (no closure).
    static SubalgebraBasis span(const SpecPtr<S>& spec, const std::vector<BlockElement<S>>& elements) {
        SubalgebraBasis b(spec);
        for (const auto& x : elements) {
            b.check_spec(x);
            b.insert(flatten(x));
        }
        return b;
    }

    const SupportSpec<S>& spec() const noexcept { return *spec_; }
    const SpecPtr<S>& spec_ptr() const noexcept { return spec_; }

    std::size_t dimension() const noexcept { return rows_.size(); }
    const std::vector<Vector<S>>& rows() const noexcept { return rows_; }
    const std::vector<Index>& pivots() const noexcept { return pivots_; }

    /// Row whose pivot sits at flat coordinate col, if any.
    std::optional<std::size_t> row_for_pivot(Index col) const {
        const auto r = row_of_pivot_.at(static_cast<std::size_t>(col));
        return r < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(r));
    }

    /// Word in the generators that introduced each row's pivot; empty strings
    /// unless provenance was recorded.
    const std::vector<std::string>& provenance() const noexcept { return provenance_; }

    BlockElement<S> element(std::size_t row) const { return unflatten(spec_, rows_.at(row)); }

    /// Residue of v after elimination against every row.
    Vector<S> reduce(Vector<S> v) const {
        if (v.size() != spec_->dimension()) throw ShapeError("reduce: vector has wrong length");
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Index p = pivots_[r];
            if (is_zero(v(p))) continue;
            const S factor = v(p);
            for (Index j : support_[r]) v(j) -= factor * rows_[r](j);
        }
        return v;
    }

    /// Coordinates of v over the rows, read at the pivot columns. Equal to the
    /// expansion coefficients whenever v lies in the span.
    Vector<S> coordinates(const Vector<S>& v) const {
        Vector<S> c(static_cast<Index>(rows_.size()));
        for (std::size_t r = 0; r < rows_.size(); ++r) c(static_cast<Index>(r)) = v(pivots_[r]);
        return c;
    }

    /// Sum of coefficient_r * row_r.
    Vector<S> combine(const Vector<S>& coefficients) const {
        if (coefficients.size() != static_cast<Index>(rows_.size())) throw ShapeError("combine: wrong coefficient count");
        Vector<S> v = Vector<S>::Constant(spec_->dimension(), S(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const S& c = coefficients(static_cast<Index>(r));
            if (is_zero(c)) continue;
            for (Index j : support_[r]) v(j) += c * rows_[r](j);
        }
        return v;
    }

    /// Adds v to the span; returns false when v was already in it.
    bool insert(const Vector<S>& v, std::string word = {}) {
        Vector<S> residue = reduce(v);
        Index pivot = 0;
        while (pivot < residue.size() && is_zero(residue(pivot))) ++pivot;
        if (pivot == residue.size()) return false;

        const S inv = inverse(residue(pivot));
        for (Index j = pivot; j < residue.size(); ++j)
            if (!is_zero(residue(j))) residue(j) *= inv;
        const auto new_support = nonzeros(residue);

        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (is_zero(rows_[r](pivot))) continue;
            const S factor = rows_[r](pivot);
            for (Index j : new_support) rows_[r](j) -= factor * residue(j);
            support_[r] = nonzeros(rows_[r]);
        }

        const auto at = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin());
        const auto offset = static_cast<std::ptrdiff_t>(at);
        rows_.insert(rows_.begin() + offset, std::move(residue));
        pivots_.insert(pivots_.begin() + offset, pivot);
        support_.insert(support_.begin() + offset, new_support);
        provenance_.insert(provenance_.begin() + offset, std::move(word));
        for (std::size_t r = at; r < pivots_.size(); ++r)
            row_of_pivot_[static_cast<std::size_t>(pivots_[r])] = static_cast<std::ptrdiff_t>(r);
        return true;
    }

    void check_spec(const BlockElement<S>& x) const {
        if (!same_spec(spec_, x.spec_ptr())) throw StructuralError("element and basis belong to different support specs");
    }

private:
    static std::vector<Index> nonzeros(const Vector<S>& v) {
        std::vector<Index> out;
        for (Index j = 0; j < v.size(); ++j)
            if (!is_zero(v(j))) out.push_back(j);
        return out;
    }

    SpecPtr<S> spec_;
    std::vector<Vector<S>> rows_;
    std::vector<Index> pivots_;
    std::vector<std::vector<Index>> support_;
    std::vector<std::string> provenance_;
    std::vector<std::ptrdiff_t> row_of_pivot_;
};

struct GenerateOptions {
    bool include_unit = true;
    bool record_provenance = false;
    /// Letter used for each generator in provenance words; defaults to g0, g1, ...
    std::vector<std::string> names;
};

/// Unital (or not) subalgebra generated by gens. Seeds {1} and the
/// generators, then right-multiplies every inserted word by every generator
/// in (insertion order, generator order) until nothing new appears.
template <ExactField S>
SubalgebraBasis<S> generate(const SpecPtr<S>& spec, const std::vector<BlockElement<S>>& gens,
                            const GenerateOptions& options = {}) {
    if (gens.empty()) throw PreconditionError("generate: no generators");
    SubalgebraBasis<S> basis(spec);
    for (const auto& g : gens) basis.check_spec(g);

    auto name = [&](std::size_t k) {
        return k < options.names.size() ? options.names[k] : "g" + std::to_string(k);
    };
    auto label = [&](const std::string& word) { return options.record_provenance ? word : std::string{}; };

    struct Word {
        BlockElement<S> value;
        std::string text;
    };
    std::deque<Word> pending;
    auto offer = [&](BlockElement<S> x, std::string text) {
        if (basis.insert(flatten(x), label(text))) pending.push_back({std::move(x), std::move(text)});
    };

    if (options.include_unit) offer(BlockElement<S>::identity(spec), "1");
    for (std::size_t k = 0; k < gens.size(); ++k) offer(gens[k], name(k));

    while (!pending.empty()) {
        const Word w = std::move(pending.front());
        pending.pop_front();
        for (std::size_t k = 0; k < gens.size(); ++k)
            offer(w.value * gens[k], w.text == "1" ? name(k) : w.text + name(k));
    }
    return basis;
}

/// Unital closure of {e, sigma}, i.e. the algebra B.
template <ExactField S>
SubalgebraBasis<S> generate_b(const Generators<S>& g, bool record_provenance = false) {
    return generate(g.one.spec_ptr(), {g.e, g.sigma}, GenerateOptions{true, record_provenance, {"e", "s"}});
}

template <ExactField S>
Membership<S> contains(const SubalgebraBasis<S>& basis, const BlockElement<S>& x) {
    basis.check_spec(x);
    const Vector<S> v = flatten(x);
    const Vector<S> residue = basis.reduce(v);
    Membership<S> out;
    for (Index j = 0; j < residue.size(); ++j)
        if (!is_zero(residue(j))) {
            out.residue_coordinate = j;
            return out;
        }
    out.member = true;
    out.coefficients = basis.coordinates(v);
    return out;
}

/// Re-expands a certificate and compares it against x.
template <ExactField S>
bool certificate_valid(const SubalgebraBasis<S>& basis, const BlockElement<S>& x, const Membership<S>& m) {
    return m.member && basis.combine(m.coefficients) == flatten(x);
}

template <ExactField S>
std::size_t dimension(const SubalgebraBasis<S>& basis) {
    return basis.dimension();
}

}  // namespace affsim
