#include "invlim/codes.hpp"

#include <algorithm>

namespace invlim {

namespace {

char tail_symbol_at(Tail t, std::size_t offset) {
    switch (t) {
        case Tail::AllZeros: return '0';
        case Tail::AllOnes: return '1';
        case Tail::Alt10: return offset % 2 == 0 ? '1' : '0';
        default: return offset % 2 == 0 ? '0' : '1';
    }
}

std::string tail_text(Tail t) {
    switch (t) {
        case Tail::AllZeros: return "0^inf";
        case Tail::AllOnes: return "1^inf";
        case Tail::Alt10: return "(10)^inf";
        default: return "(01)^inf";
    }
}

}  // namespace

TypeCode::TypeCode(std::string prefix, Tail tail) : prefix_(std::move(prefix)), tail_(tail) {
    for (char c : prefix_)
        if (c != '0' && c != '1') throw Error("type code prefix must be binary");
    // Strip tail symbols duplicated at the prefix end; absorbing a symbol
    // into an alternating tail swaps its phase.
    for (;;) {
        if (prefix_.empty()) break;
        char last = prefix_.back();
        if (tail_ == Tail::AllZeros && last == '0') {
            prefix_.pop_back();
        } else if (tail_ == Tail::AllOnes && last == '1') {
            prefix_.pop_back();
        } else if (tail_ == Tail::Alt10 && last == '0') {
            prefix_.pop_back();
            tail_ = Tail::Alt01;
        } else if (tail_ == Tail::Alt01 && last == '1') {
            prefix_.pop_back();
            tail_ = Tail::Alt10;
        } else {
            break;
        }
    }
}

TypeCode canonicalize(const std::string& prefix, Tail tail) { return TypeCode(prefix, tail); }

int TypeCode::at(std::size_t n) const {
    if (n < prefix_.size()) return prefix_[n] - '0';
    return tail_symbol_at(tail_, n - prefix_.size()) - '0';
}

TypeCode TypeCode::prepend(int bit) const {
    return TypeCode(std::string(1, bit ? '1' : '0') + prefix_, tail_);
}

TypeCode TypeCode::drop_first() const {
    if (!prefix_.empty()) return TypeCode(prefix_.substr(1), tail_);
    switch (tail_) {
        case Tail::Alt10: return TypeCode("", Tail::Alt01);
        case Tail::Alt01: return TypeCode("", Tail::Alt10);
        default: return *this;
    }
}

std::string TypeCode::text() const { return prefix_ + "." + tail_text(tail_); }

TypeCode TypeCode::parse(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) throw Error("type code text needs a '.' separator: " + text);
    std::string prefix = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    Tail t;
    if (tail == "0^inf") t = Tail::AllZeros;
    else if (tail == "1^inf") t = Tail::AllOnes;
    else if (tail == "(10)^inf") t = Tail::Alt10;
    else if (tail == "(01)^inf") t = Tail::Alt01;
    else throw Error("unknown tail notation: " + tail);
    return TypeCode(prefix, t);
}

TypeCode TypeCode::t_n(int n) { return TypeCode(std::string(n, '0'), Tail::AllOnes); }

TypeCode TypeCode::t_infinity() { return TypeCode("", Tail::AllZeros); }

TypeCode TypeCode::t_upper(int i, int n, int k) {
    std::string p;
    for (int j = 0; j < k; ++j) p += (i == 1) ? "10" : "01";
    p.append(n - 2 * k, '0');
    return TypeCode(p, Tail::AllOnes);
}

TypeCode TypeCode::t_lower(int i, int k) {
    std::string p;
    for (int j = 0; j < k; ++j) p += (i == 1) ? "10" : "01";
    return TypeCode(p, Tail::AllZeros);
}

TypeCode TypeCode::t_lower_infinity(int i) {
    return TypeCode("", i == 1 ? Tail::Alt10 : Tail::Alt01);
}

std::optional<int> t_n_index(const TypeCode& t) {
    if (t.tail() != Tail::AllOnes) return std::nullopt;
    for (char c : t.prefix())
        if (c != '0') return std::nullopt;
    return static_cast<int>(t.prefix().size());
}

std::optional<std::pair<int, int>> lower_index(const TypeCode& t) {
    if (t.tail() != Tail::AllZeros) return std::nullopt;
    const std::string& p = t.prefix();
    if (p.empty()) return std::make_pair(0, 0);  // T_infinity
    for (std::size_t j = 0; j < p.size(); ++j) {
        char expect = (p[0] == '1') ? (j % 2 == 0 ? '1' : '0') : (j % 2 == 0 ? '0' : '1');
        if (p[j] != expect) return std::nullopt;
    }
    if (p[0] == '1') {
        if (p.size() % 2 == 0) return std::nullopt;  // canonical form ends in '1'
        return std::make_pair(1, static_cast<int>((p.size() + 1) / 2));
    }
    if (p.size() % 2 != 0) return std::nullopt;
    return std::make_pair(0, static_cast<int>(p.size() / 2));
}

namespace {

// at(m) == 1 for all m >= m0
bool ones_from(const TypeCode& t, std::size_t m0) {
    if (t.tail() != Tail::AllOnes) return false;
    for (std::size_t m = m0; m < t.prefix().size(); ++m)
        if (t.at(m) != 1) return false;
    return true;
}

}  // namespace

bool is_admissible(const CaseLabel& label, const TypeCode& t) {
    switch (label.value) {
        case Case::Case1:
        case Case::Case2:
            return t == TypeCode::t_infinity() || t_n_index(t).has_value();
        case Case::Case3a:
        case Case::Case3b:
            break;
        default:
            return false;
    }
    const std::size_t window = t.prefix().size() + 1;
    for (std::size_t n = 0; n <= window; ++n) {
        if (t.at(n) == 1 && t.at(n + 1) == 1 && !ones_from(t, n)) return false;
        if (t.at(n) == 0 && t.at(n + 1) == 0 && t.at(n + 2) == 1 && !ones_from(t, n + 2))
            return false;
    }
    return true;
}

std::vector<TypeCode> enumerate_types(const CaseLabel& label, int bound) {
    if (bound < 1) throw DomainError("enumerate_types: bound must be >= 1");
    std::vector<TypeCode> out;
    out.reserve(bound);
    if (label.value == Case::Case1 || label.value == Case::Case2) {
        for (int n = 0; n < bound; ++n) out.push_back(TypeCode::t_n(n));
        return out;
    }
    if (label.value != Case::Case3a && label.value != Case::Case3b)
        throw CaseError("enumerate_types: map is outside the classified family");

    auto push = [&](TypeCode t) { if (static_cast<int>(out.size()) < bound) out.push_back(std::move(t)); };
    push(TypeCode::t_n(0));
    push(TypeCode::t_n(1));
    for (int n = 1; static_cast<int>(out.size()) < bound; ++n) {
        push(TypeCode::t_n(2 * n));
        for (int k = 1; k <= n; ++k) push(TypeCode::t_upper(1, 2 * n, k));
        for (int k = n; k >= 1; --k) push(TypeCode::t_upper(1, 2 * n + 1, k));
        push(TypeCode::t_n(2 * n + 1));
        for (int k = 1; k <= n; ++k) push(TypeCode::t_upper(0, 2 * n + 1, k));
        for (int k = n; k >= 1; --k) push(TypeCode::t_upper(0, 2 * n + 2, k));
    }
    return out;
}

std::vector<TypeCode> enumerate_arc_types(int per_side) {
    std::vector<TypeCode> out;
    out.reserve(2 * per_side + 1);
    for (int k = per_side; k >= 1; --k) out.push_back(TypeCode::t_lower(1, k));
    out.push_back(TypeCode::t_infinity());
    for (int k = 1; k <= per_side; ++k) out.push_back(TypeCode::t_lower(0, k));
    return out;
}

}  // namespace invlim
