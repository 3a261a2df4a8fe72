#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "groupoid_lab/graph.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/integer.hpp"

namespace groupoid_lab {

/// Σ_v m_v R_v in the diagonal algebra D_G, stored densely over vertex
/// indices. Products are componentwise.
template <typename Scalar>
class Diagonal {
public:
    Diagonal() = default;
    explicit Diagonal(std::size_t vertex_count) : coeff_(vertex_count, Scalar(0)) {}
    explicit Diagonal(std::vector<Scalar> coefficients) : coeff_(std::move(coefficients)) {}

    static Diagonal zero(std::size_t vertex_count) { return Diagonal(vertex_count); }
    static Diagonal identity(std::size_t vertex_count) { return Diagonal(std::vector<Scalar>(vertex_count, Scalar(1))); }
    static Diagonal unit(std::size_t vertex_count, VertexId v) {
        Diagonal d(vertex_count);
        d[v] = Scalar(1);
        return d;
    }

    std::size_t size() const { return coeff_.size(); }
    Scalar& operator[](VertexId v) { return coeff_.at(v); }
    const Scalar& operator[](VertexId v) const { return coeff_.at(v); }
    const std::vector<Scalar>& coefficients() const { return coeff_; }

    bool is_zero() const {
        return std::all_of(coeff_.begin(), coeff_.end(), [](const Scalar& c) { return c == 0; });
    }
    Scalar max_abs() const {
        Scalar best(0);
        for (const auto& c : coeff_) best = std::max<Scalar>(best, c < 0 ? Scalar(-c) : c);
        return best;
    }

    Diagonal& operator+=(const Diagonal& other) {
        check(other);
        for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += other.coeff_[i];
        return *this;
    }
    Diagonal& operator-=(const Diagonal& other) {
        check(other);
        for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= other.coeff_[i];
        return *this;
    }
    Diagonal& operator*=(const Diagonal& other) {
        check(other);
        for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] *= other.coeff_[i];
        return *this;
    }
    Diagonal& operator*=(const Scalar& s) {
        for (auto& c : coeff_) c *= s;
        return *this;
    }

    friend Diagonal operator+(Diagonal a, const Diagonal& b) { return a += b; }
    friend Diagonal operator-(Diagonal a, const Diagonal& b) { return a -= b; }
    friend Diagonal operator*(Diagonal a, const Diagonal& b) { return a *= b; }
    friend Diagonal operator*(const Scalar& s, Diagonal a) { return a *= s; }
    friend bool operator==(const Diagonal&, const Diagonal&) = default;

private:
    void check(const Diagonal& other) const {
        if (other.coeff_.size() != coeff_.size()) throw std::invalid_argument("diagonal elements of different size");
    }

    std::vector<Scalar> coeff_;
};

using DiagonalElement = Diagonal<Integer>;

/// Finite formal sum Σ c_w R_w of right multiplication operators, keyed by
/// reduced groupoid elements. Zero coefficients are never stored.
template <typename Scalar>
class FormalSum {
public:
    using Terms = std::map<GroupoidElement, Scalar>;

    FormalSum() = default;

    static FormalSum of(const GroupoidElement& w, Scalar c = Scalar(1)) {
        FormalSum s;
        s.add(w, std::move(c));
        return s;
    }
    static FormalSum embed(const Diagonal<Scalar>& d) {
        FormalSum s;
        for (std::size_t v = 0; v < d.size(); ++v) s.add(GroupoidElement::vertex(static_cast<VertexId>(v)), d[v]);
        return s;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const GroupoidElement& w, const Scalar& c) {
        if (w.is_empty() || c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FormalSum& operator+=(const FormalSum& other) {
        for (const auto& [w, c] : other.terms_) add(w, c);
        return *this;
    }
    FormalSum& operator*=(const Scalar& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [w, c] : terms_) c *= s;
        }
        return *this;
    }
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend bool operator==(const FormalSum&, const FormalSum&) = default;

private:
    Terms terms_;
};

using OperatorSum = FormalSum<Integer>;

/// Operator product. R_a R_b = R_{b·a}, so each pair of terms contributes
/// at concat(b, a).
template <typename Scalar>
FormalSum<Scalar> multiply(const ShadowedGraph& g, const FormalSum<Scalar>& x, const FormalSum<Scalar>& y) {
    FormalSum<Scalar> out;
    for (const auto& [a, ca] : x.terms()) {
        for (const auto& [b, cb] : y.terms()) {
            auto w = concat(g, b, a);
            if (!w.is_empty()) out.add(w, ca * cb);
        }
    }
    return out;
}

/// Canonical conditional expectation: keeps the vertex terms.
template <typename Scalar>
Diagonal<Scalar> expectation(const FormalSum<Scalar>& x, std::size_t vertex_count) {
    Diagonal<Scalar> d(vertex_count);
    for (const auto& [w, c] : x.terms()) {
        if (w.is_vertex()) d[w.source()] += c;
    }
    return d;
}

}  // namespace groupoid_lab
