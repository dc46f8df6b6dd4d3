#include "mackey/replabel.hpp"

#include "mackey/errors.hpp"

#include <cctype>
#include <numeric>

namespace mackey {

long RepLabel::dimension() const {
    long d = t + s;
    for (long c : a) d += 2 * c;
    for (const auto& tw : twisted) d += 2 * tw.coefficient;
    return d;
}

bool RepLabel::is_actual() const {
    if (t < 0 || s < 0) return false;
    for (long c : a)
        if (c < 0) return false;
    for (const auto& tw : twisted)
        if (tw.coefficient < 0) return false;
    return true;
}

RepLabel zero_rep(const TowerShape& shape) {
    RepLabel v;
    v.a.assign(shape.n, 0);
    return v;
}

RepLabel lambda_rep(const TowerShape& shape, int k, long coefficient) {
    RepLabel v = zero_rep(shape);
    v.a.at(k) = coefficient;
    return v;
}

RepLabel trivial_rep(const TowerShape& shape, long t) {
    RepLabel v = zero_rep(shape);
    v.t = t;
    return v;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= text.size();
    }
    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& why) {
        skip();
        std::string token = pos < text.size() ? text.substr(pos, 1) : "end of input";
        std::size_t end = pos;
        while (end < text.size() && std::isalnum(static_cast<unsigned char>(text[end]))) ++end;
        if (end > pos + 1) token = text.substr(pos, end - pos);
        throw ValidationError("representation label: " + why + " at token '" + token + "' (position " +
                              std::to_string(pos) + ")");
    }
    bool number(long* out) {
        skip();
        std::size_t start = pos;
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (v > 100000000L) fail("number too large");
            v = v * 10 + (text[pos] - '0');
            ++pos;
            skip();
        }
        if (pos == start) return false;
        *out = v;
        return true;
    }
};

}  // namespace

RepLabel parse_rep(const std::string& text, const TowerShape& shape) {
    RepLabel v = zero_rep(shape);
    Cursor c{text};
    if (c.done()) c.fail("empty label");
    bool first = true;
    while (!c.done()) {
        long sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.pos;
        } else if (!first) {
            c.fail("expected '+' or '-'");
        }
        first = false;
        long coef = 1;
        const bool has_number = c.number(&coef);
        ch = c.peek();
        if (ch == 'L' || ch == 'l') {
            const std::size_t term_at = c.pos;
            ++c.pos;
            long k = 0;
            if (!c.number(&k)) c.fail("expected an index after 'L'");
            if (k >= shape.n) {
                c.pos = term_at;
                c.fail("lambda index out of range for n = " + std::to_string(shape.n));
            }
            long r = 1;
            if (c.peek() == '@') {
                ++c.pos;
                if (!c.number(&r) || r == 0) c.fail("expected a nonzero twist after '@'");
                if (r % shape.p == 0) c.fail("twist divisible by p");
            }
            if (r == 1)
                v.a[k] += sign * coef;
            else
                v.twisted.push_back({static_cast<int>(k), r, sign * coef});
        } else if (ch == 's' || ch == 'S') {
            if (shape.p != 2) c.fail("sigma only exists for p = 2");
            ++c.pos;
            v.s += sign * coef;
        } else if (has_number) {
            v.t += sign * coef;
        } else {
            c.fail("expected a term");
        }
    }
    return v;
}

RepLabel canonicalize(const RepLabel& v, const TowerShape& shape) {
    RepLabel out = v;
    for (const auto& tw : v.twisted) out.a.at(tw.k) += tw.coefficient;
    out.twisted.clear();
    if (shape.p == 2 && shape.n >= 1) {
        out.s += 2 * out.a[shape.n - 1];
        out.a[shape.n - 1] = 0;
    }
    return out;
}

RepLabel add(const RepLabel& x, const RepLabel& y) {
    RepLabel out = x;
    if (out.a.size() < y.a.size()) out.a.resize(y.a.size(), 0);
    for (std::size_t i = 0; i < y.a.size(); ++i) out.a[i] += y.a[i];
    out.t += y.t;
    out.s += y.s;
    out.twisted.insert(out.twisted.end(), y.twisted.begin(), y.twisted.end());
    return out;
}

RepLabel negate(const RepLabel& x) {
    RepLabel out = x;
    for (long& c : out.a) c = -c;
    out.t = -out.t;
    out.s = -out.s;
    for (auto& tw : out.twisted) tw.coefficient = -tw.coefficient;
    return out;
}

std::string to_string(const RepLabel& v) {
    std::string out;
    auto term = [&](long c, const std::string& name) {
        if (c == 0) return;
        if (c < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        const long m = c < 0 ? -c : c;
        if (m != 1 || name.empty()) out += std::to_string(m);
        out += name;
    };
    for (int k = static_cast<int>(v.a.size()) - 1; k >= 0; --k) term(v.a[k], "L" + std::to_string(k));
    for (const auto& tw : v.twisted)
        term(tw.coefficient, "L" + std::to_string(tw.k) + "@" + std::to_string(tw.r));
    term(v.s, "s");
    term(v.t, "");
    return out.empty() ? "0" : out;
}

}  // namespace mackey
