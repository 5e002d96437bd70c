#include "qsl2/labels.hpp"

#include <algorithm>
#include <sstream>

namespace qsl2 {

ProjPoint ProjPoint::make(const FieldElem& l1, const FieldElem& l2) {
    if (l1.is_zero() && l2.is_zero())
        throw DomainError("projective point needs a nonzero coordinate");
    const FieldCtx* ctx = l1.ctx() ? l1.ctx() : l2.ctx();
    if (l1.is_zero()) return ProjPoint(FieldElem::zero(ctx), FieldElem::one(ctx));
    return ProjPoint(FieldElem::one(ctx), l2 / l1);
}

ProjPoint ProjPoint::infinity_point(const FieldCtx* ctx) {
    return ProjPoint(FieldElem::one(ctx), FieldElem::zero(ctx));
}

ProjPoint ProjPoint::zero_point(const FieldCtx* ctx) {
    return ProjPoint(FieldElem::zero(ctx), FieldElem::one(ctx));
}

ProjPoint ProjPoint::scaled(const FieldElem& c) const {
    return make(c * l1_, l2_);
}

ProjPoint ProjPoint::negated() const {
    return make(-l1_, l2_);
}

std::string ProjPoint::to_string() const {
    return "[" + l1_.to_string() + ":" + l2_.to_string() + "]";
}

ProjPoint ProjPoint::parse(const FieldCtx* ctx, const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("projective point must look like [a:b]: '" + s + "'");
    std::string body = s.substr(1, s.size() - 2);
    size_t colon = body.find(':');
    if (colon == std::string::npos)
        throw ParseError("projective point missing ':' in '" + s + "'");
    FieldElem a = FieldElem::parse(ctx, body.substr(0, colon));
    FieldElem b = FieldElem::parse(ctx, body.substr(colon + 1));
    return make(a, b);
}

char family_char(Family f) {
    switch (f) {
        case Family::X: return 'X';
        case Family::M: return 'M';
        case Family::W: return 'W';
        case Family::E: return 'E';
        case Family::P: return 'P';
    }
    return '?';
}

ModuleLabel ModuleLabel::simple(long s, Sign sign) { return {Family::X, s, sign, 0, {}}; }
ModuleLabel ModuleLabel::proj(long s, Sign sign) { return {Family::P, s, sign, 0, {}}; }
ModuleLabel ModuleLabel::mfam(long s, Sign sign, long n) { return {Family::M, s, sign, n, {}}; }
ModuleLabel ModuleLabel::wfam(long s, Sign sign, long n) { return {Family::W, s, sign, n, {}}; }
ModuleLabel ModuleLabel::efam(long s, Sign sign, long n, const ProjPoint& lam) {
    return {Family::E, s, sign, n, lam};
}

ModuleLabel ModuleLabel::canonicalized(long p) const {
    ModuleLabel l = *this;
    if (l.fam == Family::P && l.s == p) l = simple(p, l.sign);
    if ((l.fam == Family::M || l.fam == Family::W) && l.n == 1) {
        // M_{p-s}^{-a}(1) = W_s^{a}(1) = X_s^{a}
        l = l.fam == Family::M ? simple(p - l.s, flip(l.sign)) : simple(l.s, l.sign);
    }
    switch (l.fam) {
        case Family::X:
            if (l.s < 1 || l.s > p) throw DomainError("X label needs 1 <= s <= p");
            break;
        case Family::P:
            if (l.s < 1 || l.s > p - 1) throw DomainError("P label needs 1 <= s <= p-1");
            break;
        case Family::M:
        case Family::W:
            if (l.s < 1 || l.s > p - 1 || l.n < 2)
                throw DomainError("M/W label needs 1 <= s <= p-1 and n >= 2");
            break;
        case Family::E:
            if (l.s < 1 || l.s > p - 1 || l.n < 1 || !l.lambda)
                throw DomainError("E label needs 1 <= s <= p-1, n >= 1 and a point");
            break;
    }
    return l;
}

long ModuleLabel::dim(long p) const {
    switch (fam) {
        case Family::X: return s;
        case Family::P: return 2 * p;
        case Family::M: return p * n - s;
        case Family::W: return p * n - p + s;
        case Family::E: return p * n;
    }
    return 0;
}

long ModuleLabel::block(long p) const {
    return sign == Sign::plus ? s : p - s;
}

bool ModuleLabel::operator==(const ModuleLabel& o) const {
    if (fam != o.fam || s != o.s || sign != o.sign || n != o.n) return false;
    if (lambda.has_value() != o.lambda.has_value()) return false;
    return !lambda || *lambda == *o.lambda;
}

std::string ModuleLabel::to_string() const {
    std::ostringstream out;
    out << family_char(fam) << sign_char(sign) << "(" << s;
    if (fam == Family::M || fam == Family::W || fam == Family::E) out << "," << n;
    if (fam == Family::E) out << "," << lambda->to_string();
    out << ")";
    return out.str();
}

ModuleLabel ModuleLabel::parse(const FieldCtx* ctx, long p, const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (ch != ' ') s.push_back(ch);
    if (s.size() < 4) throw ParseError("label too short: '" + raw + "'");
    Family fam;
    switch (s[0]) {
        case 'X': fam = Family::X; break;
        case 'P': fam = Family::P; break;
        case 'M': fam = Family::M; break;
        case 'W': fam = Family::W; break;
        case 'E': fam = Family::E; break;
        default: throw ParseError("unknown family in '" + raw + "'");
    }
    Sign sign;
    if (s[1] == '+') sign = Sign::plus;
    else if (s[1] == '-') sign = Sign::minus;
    else throw ParseError("expected sign after family in '" + raw + "'");
    if (s[2] != '(' || s.back() != ')')
        throw ParseError("expected '(...)' in '" + raw + "'");
    std::string body = s.substr(3, s.size() - 4);

    // split on commas not inside brackets
    std::vector<std::string> fields;
    int depth = 0;
    std::string cur;
    for (char ch : body) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);

    auto to_long = [&raw](const std::string& t) {
        try {
            size_t used = 0;
            long v = std::stol(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + t + "' in '" + raw + "'");
        }
    };

    ModuleLabel l;
    l.fam = fam;
    l.sign = sign;
    if (fam == Family::X || fam == Family::P) {
        if (fields.size() != 1) throw ParseError("X/P labels take one field: '" + raw + "'");
        l.s = to_long(fields[0]);
    } else if (fam == Family::M || fam == Family::W) {
        if (fields.size() != 2) throw ParseError("M/W labels take (s,n): '" + raw + "'");
        l.s = to_long(fields[0]);
        l.n = to_long(fields[1]);
    } else {
        if (fields.size() != 3) throw ParseError("E labels take (s,n,[a:b]): '" + raw + "'");
        l.s = to_long(fields[0]);
        l.n = to_long(fields[1]);
        l.lambda = ProjPoint::parse(ctx, fields[2]);
    }
    return l.canonicalized(p);
}

bool label_less(long p, const ModuleLabel& a, const ModuleLabel& b) {
    auto key = [p](const ModuleLabel& l) {
        return std::tuple<long, int, long, int, long, std::string>(
            l.block(p), static_cast<int>(l.fam), l.n, l.sign == Sign::plus ? 0 : 1, l.s,
            l.lambda ? l.lambda->to_string() : std::string());
    };
    return key(a) < key(b);
}

void FormalDecomp::add(const ModuleLabel& label, long mult) {
    if (mult == 0) return;
    if (mult < 0) throw DomainError("negative multiplicity");
    ModuleLabel l = label.canonicalized(p_);
    for (auto& [lab, m] : parts_)
        if (lab == l) {
            m += mult;
            return;
        }
    auto pos = std::find_if(parts_.begin(), parts_.end(), [&](const auto& pr) {
        return label_less(p_, l, pr.first);
    });
    parts_.insert(pos, {l, mult});
}

long FormalDecomp::total_dim() const {
    long d = 0;
    for (const auto& [lab, m] : parts_) d += lab.dim(p_) * m;
    return d;
}

bool FormalDecomp::operator==(const FormalDecomp& o) const {
    return p_ == o.p_ && parts_ == o.parts_;
}

std::string FormalDecomp::to_string() const {
    if (parts_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [lab, m] : parts_) {
        if (!first) out << " + ";
        first = false;
        out << lab.to_string();
        if (m > 1) out << "^" << m;
    }
    return out.str();
}

namespace {
std::string json_escape(const std::string& s) {
    std::string r;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') r.push_back('\\');
        r.push_back(ch);
    }
    return r;
}
} // namespace

std::string FormalDecomp::to_json(const std::string& certificate) const {
    std::ostringstream out;
    out << "{\"p\":" << p_ << ",\"summands\":[";
    bool first = true;
    for (const auto& [lab, m] : parts_) {
        if (!first) out << ",";
        first = false;
        out << "{\"label\":\"" << json_escape(lab.to_string()) << "\",\"mult\":" << m << "}";
    }
    out << "],\"dim\":" << total_dim() << ",\"certificate\":\"" << json_escape(certificate)
        << "\"}";
    return out.str();
}

std::string FormalDecomp::diff(const FormalDecomp& o) const {
    std::ostringstream out;
    for (const auto& [lab, m] : parts_) {
        long om = 0;
        for (const auto& [lab2, m2] : o.parts_)
            if (lab2 == lab) om = m2;
        if (om != m)
            out << "  " << lab.to_string() << ": " << m << " vs " << om << "\n";
    }
    for (const auto& [lab, m] : o.parts_) {
        bool found = false;
        for (const auto& [lab2, m2] : parts_)
            if (lab2 == lab) found = true;
        if (!found) out << "  " << lab.to_string() << ": 0 vs " << m << "\n";
    }
    return out.str();
}

} // namespace qsl2
