// Vectors with finitely many explicit coordinates and a constant tail.
// tail == 0 models finite support in c0, tail != 0 models a convergent
// sequence in c whose limit is the tail value.

#ifndef SEQGEO_SEQVEC_HPP_
#define SEQGEO_SEQVEC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace seqgeo {

/// Coordinates are 1-based: x(k) = head[k-1] for k <= horizon, tail beyond.
/// Canonical form: the head never ends with an entry equal to the tail.
class SeqVec {
public:
    SeqVec() = default;

    SeqVec(std::vector<double> head, double tail) : head_(std::move(head)), tail_(tail) {
        if (!std::isfinite(tail_))
            throw std::invalid_argument("SeqVec: non-finite tail");
        for (double v : head_)
            if (!std::isfinite(v))
                throw std::invalid_argument("SeqVec: non-finite head entry");
        canonicalize();
    }

    double operator()(int k) const {
        if (k < 1)
            throw std::out_of_range("SeqVec: coordinate index must be >= 1");
        return k <= horizon() ? head_[static_cast<std::size_t>(k) - 1] : tail_;
    }

    int horizon() const { return static_cast<int>(head_.size()); }
    double tail() const { return tail_; }
    const std::vector<double>& head() const { return head_; }

    bool is_c0() const { return tail_ == 0.0; }
    bool is_zero() const { return head_.empty() && tail_ == 0.0; }

    friend SeqVec operator+(const SeqVec& a, const SeqVec& b) {
        const int h = std::max(a.horizon(), b.horizon());
        std::vector<double> out(static_cast<std::size_t>(h));
        for (int k = 1; k <= h; ++k)
            out[static_cast<std::size_t>(k) - 1] = a(k) + b(k);
        return SeqVec(std::move(out), a.tail_ + b.tail_);
    }

    friend SeqVec operator-(const SeqVec& a, const SeqVec& b) {
        const int h = std::max(a.horizon(), b.horizon());
        std::vector<double> out(static_cast<std::size_t>(h));
        for (int k = 1; k <= h; ++k)
            out[static_cast<std::size_t>(k) - 1] = a(k) - b(k);
        return SeqVec(std::move(out), a.tail_ - b.tail_);
    }

    friend SeqVec operator*(double c, const SeqVec& x) {
        std::vector<double> out(x.head_);
        for (double& v : out)
            v *= c;
        return SeqVec(std::move(out), c * x.tail_);
    }

    friend SeqVec operator-(const SeqVec& x) { return -1.0 * x; }

    friend bool operator==(const SeqVec& a, const SeqVec& b) {
        return a.tail_ == b.tail_ && a.head_ == b.head_;
    }

    /// Returns a copy with coordinate k set to v (k >= 1).
    SeqVec with(int k, double v) const {
        if (k < 1)
            throw std::out_of_range("SeqVec::with: index must be >= 1");
        std::vector<double> out(head_);
        if (k > horizon())
            out.resize(static_cast<std::size_t>(k), tail_);
        out[static_cast<std::size_t>(k) - 1] = v;
        return SeqVec(std::move(out), tail_);
    }

private:
    void canonicalize() {
        while (!head_.empty() && head_.back() == tail_)
            head_.pop_back();
    }

    std::vector<double> head_;
    double tail_ = 0.0;
};

inline SeqVec make_vec(std::vector<double> head, double tail) {
    return SeqVec(std::move(head), tail);
}

/// Standard basis vector e_k.
inline SeqVec unit_vec(int k) {
    if (k < 1)
        throw std::out_of_range("unit_vec: index must be >= 1");
    std::vector<double> head(static_cast<std::size_t>(k), 0.0);
    head.back() = 1.0;
    return SeqVec(std::move(head), 0.0);
}

inline double sup_norm(const SeqVec& x) {
    double m = std::abs(x.tail());
    for (double v : x.head())
        m = std::max(m, std::abs(v));
    return m;
}

/// Finite strictly increasing sequence of positive indices (j0, j1, ..., jp).
class IndexSeq {
public:
    explicit IndexSeq(std::vector<int> indices) : idx_(std::move(indices)) {
        if (idx_.empty())
            throw std::invalid_argument("IndexSeq: must be non-empty");
        int prev = 0;
        for (int j : idx_) {
            if (j <= prev)
                throw std::invalid_argument("IndexSeq: indices must be strictly increasing and >= 1");
            prev = j;
        }
    }

    const std::vector<int>& indices() const { return idx_; }
    int head_index() const { return idx_.front(); }
    std::size_t size() const { return idx_.size(); }

    friend bool operator==(const IndexSeq& a, const IndexSeq& b) { return a.idx_ == b.idx_; }

private:
    std::vector<int> idx_;
};

/// Finitely supported functional f(x) = sum_k c_k x(k) + cinf * tail(x).
/// The cinf part acts as the limit functional on c-model vectors.
class FinFunctional {
public:
    FinFunctional() = default;

    explicit FinFunctional(std::vector<double> coeffs, double cinf = 0.0)
        : coeffs_(std::move(coeffs)), cinf_(cinf) {
        if (!std::isfinite(cinf_))
            throw std::invalid_argument("FinFunctional: non-finite cinf");
        for (double c : coeffs_)
            if (!std::isfinite(c))
                throw std::invalid_argument("FinFunctional: non-finite coefficient");
        while (!coeffs_.empty() && coeffs_.back() == 0.0)
            coeffs_.pop_back();
    }

    static FinFunctional coordinate(int k) {
        std::vector<double> c(static_cast<std::size_t>(k), 0.0);
        c.back() = 1.0;
        return FinFunctional(std::move(c));
    }

    double operator()(const SeqVec& x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            s += coeffs_[i] * x(static_cast<int>(i) + 1);
        s += cinf_ * x.tail();
        return s;
    }

    double coeff(int k) const {
        if (k < 1)
            throw std::out_of_range("FinFunctional::coeff: index must be >= 1");
        return k <= support_bound() ? coeffs_[static_cast<std::size_t>(k) - 1] : 0.0;
    }

    int support_bound() const { return static_cast<int>(coeffs_.size()); }
    double cinf() const { return cinf_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty() && cinf_ == 0.0; }

    /// Dual norm on the c model: sum of |c_k| plus |cinf|.
    double l1_norm() const {
        double s = std::abs(cinf_);
        for (double c : coeffs_)
            s += std::abs(c);
        return s;
    }

    friend FinFunctional operator*(double a, const FinFunctional& f) {
        std::vector<double> c(f.coeffs_);
        for (double& v : c)
            v *= a;
        return FinFunctional(std::move(c), a * f.cinf_);
    }

private:
    std::vector<double> coeffs_;
    double cinf_ = 0.0;
};

inline double apply_functional(const FinFunctional& f, const SeqVec& x) {
    return f(x);
}

/// Smallest M such that every argument has head length <= M. Used to pick
/// fresh coordinates beyond all active supports.
inline int active_horizon(const std::vector<SeqVec>& xs,
                          const std::vector<FinFunctional>& fs = {}) {
    int m = 0;
    for (const SeqVec& x : xs)
        m = std::max(m, x.horizon());
    for (const FinFunctional& f : fs)
        m = std::max(m, f.support_bound());
    return m;
}

inline void to_json(nlohmann::json& j, const SeqVec& x) {
    j = nlohmann::json{{"head", x.head()}, {"tail", x.tail()}};
}

inline void from_json(const nlohmann::json& j, SeqVec& x) {
    std::vector<double> head = j.value("head", std::vector<double>{});
    double tail = j.value("tail", 0.0);
    x = SeqVec(std::move(head), tail);
}

inline void to_json(nlohmann::json& j, const FinFunctional& f) {
    j = nlohmann::json{{"head", f.coeffs()}, {"tail", 0.0}};
    if (f.cinf() != 0.0)
        j["cinf"] = f.cinf();
}

inline void from_json(const nlohmann::json& j, FinFunctional& f) {
    std::vector<double> coeffs = j.value("head", std::vector<double>{});
    double cinf = j.value("cinf", 0.0);
    if (j.contains("tail") && j["tail"].get<double>() != 0.0)
        throw std::invalid_argument("FinFunctional: tail must be 0");
    f = FinFunctional(std::move(coeffs), cinf);
}

inline void to_json(nlohmann::json& j, const IndexSeq& s) {
    j = s.indices();
}

}  // namespace seqgeo

#endif  // SEQGEO_SEQVEC_HPP_
