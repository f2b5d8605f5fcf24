#include "davenport/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "translate.hpp"

namespace dav {

Sequence sequence_from_list(int universe, std::vector<elem> elems) {
    std::sort(elems.begin(), elems.end());
    Sequence S;
    S.universe = universe;
    for (size_t i = 0; i < elems.size();) {
        size_t j = i;
        while (j < elems.size() && elems[j] == elems[i]) ++j;
        if (elems[i] >= universe) fail(Errc::BadParameter, "element out of range");
        S.terms.emplace_back(elems[i], int(j - i));
        i = j;
    }
    return S;
}

// ---- grammar -----------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    size_t p = 0;
    bool done() const { return p >= s.size(); }
    char peek() const { return s[p]; }
    [[noreturn]] void err(const std::string& what) const {
        fail(Errc::ParseError, what + " at position " + std::to_string(p) + " in sequence");
    }
};

long long parse_int(Cursor& c, bool allow_sign) {
    size_t start = c.p;
    bool neg = false;
    if (allow_sign && !c.done() && (c.peek() == '-' || c.peek() == '+')) {
        neg = c.s[c.p++] == '-';
    }
    long long v = 0;
    size_t digits = 0;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + (c.s[c.p++] - '0');
        if (++digits > 9) {
            c.p = start;
            c.err("number too large");
        }
    }
    if (digits == 0) {
        c.p = start;
        c.err("expected a number");
    }
    return neg ? -v : v;
}

elem parse_factor(const FiniteGroup& G, Cursor& c) {
    size_t start = c.p;
    while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_'))
        ++c.p;
    std::string name = c.s.substr(start, c.p - start);
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) c.err("expected a generator name");
    int g = G.gen_by_name(name);
    if (g < 0) fail(Errc::UnknownGenerator, "'" + name + "' is not a generator of " + G.name);
    long long e = 1;
    if (!c.done() && c.peek() == '^') {
        ++c.p;
        e = parse_int(c, true);
    }
    return G.power(elem(g), e);
}

elem parse_word(const FiniteGroup& G, Cursor& c) {
    elem v = parse_factor(G, c);
    while (!c.done() && c.peek() == '*') {
        ++c.p;
        v = G.op(v, parse_factor(G, c));
    }
    return v;
}

}  // namespace

std::vector<elem> parse_element_list(const FiniteGroup& G, const std::string& text) {
    std::vector<elem> out;
    Cursor c{text};
    while (true) {
        while (!c.done() && std::isspace(static_cast<unsigned char>(c.peek()))) ++c.p;
        if (c.done()) break;
        elem v;
        if (c.peek() == '(') {
            ++c.p;
            v = parse_word(G, c);
            if (c.done() || c.peek() != ')') c.err("expected ')'");
            ++c.p;
        } else {
            v = parse_word(G, c);
        }
        long long mult = 1;
        if (!c.done() && c.peek() == '[') {
            ++c.p;
            mult = parse_int(c, false);
            if (c.done() || c.peek() != ']') c.err("expected ']'");
            ++c.p;
            if (mult > 1 << 20) c.err("multiplicity too large");
        }
        out.insert(out.end(), size_t(mult), v);
    }
    return out;
}

Sequence parse_sequence(const FiniteGroup& G, const std::string& text) {
    return sequence_from_list(G.n, parse_element_list(G, text));
}

namespace {

std::string term_name(const FiniteGroup& G, elem g) {
    const std::string& nm = G.elem_name(g);
    if (nm.find('*') != std::string::npos) return "(" + nm + ")";
    return nm;
}

}  // namespace

std::string render_sequence(const FiniteGroup& G, const Sequence& S) {
    std::ostringstream os;
    bool first = true;
    for (auto& [g, m] : S.terms) {
        if (!first) os << " ";
        first = false;
        os << term_name(G, g);
        if (m > 1) os << "[" << m << "]";
    }
    return os.str();
}

std::string render_element_list(const FiniteGroup& G, const std::vector<elem>& ordered) {
    std::ostringstream os;
    for (size_t i = 0; i < ordered.size(); ++i) os << (i ? " " : "") << term_name(G, ordered[i]);
    return os.str();
}

elem product_of(const FiniteGroup& G, const std::vector<elem>& ordered) {
    elem p = 0;
    for (elem g : ordered) p = G.op(p, g);
    return p;
}

// ---- pi table ----------------------------------------------------------

PiTable::PiTable(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap) {
    if (S.universe != G.n) fail(Errc::BadParameter, "sequence over a different group");
    n_ = G.n;
    W_ = (n_ + 63) / 64;
    supp_ = S.terms;
    size_ = 1;
    for (auto& [g, m] : supp_) {
        size_ *= uint64_t(m) + 1;
        if (size_ > dp_cap)
            fail(Errc::CapExceeded,
                 "product-set table needs " + std::to_string(size_) +
                     "+ entries, cap is " + std::to_string(dp_cap));
    }
    data_.assign(size_ * W_, 0);
    data_[0] = 1;  // pi(empty) = {identity}
    if (size_ == 1) return;

    Translator tr;
    tr.init(G);
    size_t k = supp_.size();
    std::vector<uint64_t> weight(k);
    std::vector<int> digit(k, 0);
    uint64_t w = 1;
    for (size_t i = 0; i < k; ++i) {
        weight[i] = w;
        w *= uint64_t(supp_[i].second) + 1;
    }
    for (uint64_t r = 1; r < size_; ++r) {
        // ripple-increment the mixed-radix digit vector
        for (size_t i = 0;; ++i) {
            if (++digit[i] <= supp_[i].second) break;
            digit[i] = 0;
        }
        uint64_t* dst = data_.data() + r * W_;
        for (size_t i = 0; i < k; ++i)
            if (digit[i] > 0)
                tr.or_translate(dst, data_.data() + (r - weight[i]) * W_, supp_[i].first);
    }
}

ElementSet PiTable::set_at(uint64_t rank) const {
    ElementSet s(n_);
    const uint64_t* w = at(rank);
    for (int i = 0; i < n_; ++i)
        if ((w[i >> 6] >> (i & 63)) & 1) s.set(i);
    return s;
}

ElementSet product_set(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap) {
    PiTable t(G, S, dp_cap);
    return t.set_at(t.full_rank());
}

bool is_product_one(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap) {
    PiTable t(G, S, dp_cap);
    return t.contains_identity(t.full_rank());
}

bool is_product_one_free(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap) {
    PiTable t(G, S, dp_cap);
    for (uint64_t r = 1; r < t.size(); ++r)
        if (t.contains_identity(r)) return false;
    return true;
}

bool is_atom(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap) {
    if (S.empty()) return false;
    PiTable t(G, S, dp_cap);
    uint64_t full = t.full_rank();
    if (!t.contains_identity(full)) return false;
    // A split is a pair of complementary ranks (r, full - r), both proper.
    for (uint64_t r = 1; 2 * r <= full; ++r)
        if (t.contains_identity(r) && t.contains_identity(full - r)) return false;
    return true;
}

}  // namespace dav
