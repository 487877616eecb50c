#include "folcoh/form.hpp"

#include <algorithm>
#include <sstream>

namespace folcoh {

Form Form::scalar(const Scalar& c) {
    Form f(0);
    if (c != 0)
        f.terms_[MultiIndex{}] = c;
    return f;
}

Form Form::monomial(const MultiIndex& idx, const Scalar& coeff) {
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] >= idx[i + 1])
            throw std::invalid_argument("monomial index not strictly increasing");
    Form f(static_cast<int>(idx.size()));
    if (coeff != 0)
        f.terms_[idx] = coeff;
    return f;
}

Scalar Form::coefficient(const MultiIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void Form::add_term(const MultiIndex& idx, const Scalar& c) {
    if (c == 0)
        return;
    if (static_cast<int>(idx.size()) != degree_)
        throw std::invalid_argument("term degree mismatch");
    auto [it, inserted] = terms_.emplace(idx, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Form Form::operator+(const Form& other) const {
    if (degree_ != other.degree_ && !is_zero() && !other.is_zero())
        throw std::invalid_argument("adding forms of different degree");
    Form out(is_zero() ? other.degree_ : degree_);
    out.terms_ = terms_;
    for (const auto& [idx, c] : other.terms_) {
        auto [it, inserted] = out.terms_.emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                out.terms_.erase(it);
        }
    }
    return out;
}

Form Form::operator-(const Form& other) const { return *this + (-other); }

Form Form::operator-() const {
    Form out(degree_);
    for (const auto& [idx, c] : terms_)
        out.terms_[idx] = -c;
    return out;
}

Form Form::operator*(const Scalar& c) const {
    Form out(degree_);
    if (c == 0)
        return out;
    for (const auto& [idx, coeff] : terms_)
        out.terms_[idx] = coeff * c;
    return out;
}

bool Form::operator==(const Form& other) const {
    if (is_zero() && other.is_zero())
        return true;
    return degree_ == other.degree_ && terms_ == other.terms_;
}

int Form::max_index() const {
    int m = -1;
    for (const auto& [idx, c] : terms_)
        if (!idx.empty())
            m = std::max(m, idx.back());
    return m;
}

std::string Form::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        if (!first)
            out << " + ";
        first = false;
        out << scalar_to_string(c);
        for (int i : idx) {
            out << (i == idx.front() ? " " : "^");
            out << names.at(static_cast<std::size_t>(i));
        }
    }
    return out.str();
}

int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex* merged) {
    // Count inversions between a and b; the concatenation (a, b) needs one
    // transposition per pair (x in a, y in b) with x > y.
    long inversions = 0;
    for (int x : a)
        for (int y : b) {
            if (x == y)
                return 0;
            if (x > y)
                ++inversions;
        }
    if (merged) {
        merged->clear();
        merged->reserve(a.size() + b.size());
        std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(*merged));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

Form wedge(const Form& a, const Form& b) {
    Form out(a.degree() + b.degree());
    MultiIndex merged;
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms()) {
            int s = merge_sign(ia, ib, &merged);
            if (s != 0)
                out.add_term(merged, ca * cb * s);
        }
    return out;
}

namespace {

// e^J = sign * e^I ^ e^{J \ I} when I is a subset of J; 0 otherwise.
// Fills rest with J \ I.
int extraction_sign(const MultiIndex& I, const MultiIndex& J, MultiIndex& rest) {
    rest.assign(J.begin(), J.end());
    int sign = 1;
    // Pull the entries of I to the front one at a time, in order; each move
    // across k remaining entries contributes (-1)^k.
    int front = 0;
    for (int i : I) {
        auto it = std::find(rest.begin() + front, rest.end(), i);
        if (it == rest.end())
            return 0;
        int moves = static_cast<int>(it - (rest.begin() + front));
        if (moves % 2 != 0)
            sign = -sign;
        std::rotate(rest.begin() + front, it, it + 1);
        ++front;
    }
    rest.erase(rest.begin(), rest.begin() + front);
    return sign;
}

} // namespace

Form contract(const Form& a, const Form& b) {
    Form out(b.degree() - a.degree());
    if (a.degree() > b.degree())
        return out;
    MultiIndex rest;
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms()) {
            int s = extraction_sign(ia, ib, rest);
            if (s != 0)
                out.add_term(rest, ca * cb * s);
        }
    return out;
}

Scalar inner_product(const Form& a, const Form& b) {
    if (a.degree() != b.degree() && !a.is_zero() && !b.is_zero())
        throw std::invalid_argument("inner product of forms of different degree");
    Scalar sum(0);
    for (const auto& [idx, ca] : a.terms()) {
        Scalar cb = b.coefficient(idx);
        if (cb != 0)
            sum += ca * cb;
    }
    return sum;
}

std::vector<MultiIndex> all_index_sets(int n, int r) {
    std::vector<MultiIndex> out;
    if (r < 0 || r > n)
        return out;
    MultiIndex current;
    current.reserve(static_cast<std::size_t>(r));
    auto recurse = [&](auto&& self, int next) -> void {
        if (static_cast<int>(current.size()) == r) {
            out.push_back(current);
            return;
        }
        int remaining = r - static_cast<int>(current.size());
        for (int i = next; i <= n - remaining; ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

Form hodge(const Form& a, int n) {
    if (a.max_index() >= n)
        throw std::invalid_argument("form index out of range for hodge");
    Form out(n - a.degree());
    for (const auto& [idx, c] : a.terms()) {
        MultiIndex comp;
        comp.reserve(static_cast<std::size_t>(n) - idx.size());
        std::size_t at = 0;
        for (int i = 0; i < n; ++i) {
            if (at < idx.size() && idx[at] == i)
                ++at;
            else
                comp.push_back(i);
        }
        int s = merge_sign(idx, comp);
        out.add_term(comp, c * s);
    }
    return out;
}

} // namespace folcoh
