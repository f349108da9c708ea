#include "tropint/function.hpp"

#include "tropint/linalg.hpp"
#include "tropint/util.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace tropint {

TropicalPolynomial::TropicalPolynomial(TropicalMode mode, std::vector<TropicalTerm> terms)
    : mode_(mode) {
    if (terms.empty()) throw TropError("tropical polynomial needs at least one term");
    size_t n = 0;
    for (const auto& t : terms) n = std::max(n, t.exponent.size());
    std::map<ZVec, Rat> merged;
    for (auto& t : terms) {
        ZVec e = t.exponent;
        e.resize(n, Int(0));
        auto it = merged.find(e);
        if (it == merged.end()) {
            merged.emplace(std::move(e), t.coefficient);
        } else if (mode == TropicalMode::Max ? t.coefficient > it->second
                                             : t.coefficient < it->second) {
            it->second = t.coefficient;
        }
    }
    for (auto& [e, c] : merged) terms_.push_back({e, c});
}

Rat TropicalPolynomial::evaluate(const QVec& x) const {
    Rat best;
    bool first = true;
    for (const auto& t : terms_) {
        Rat v = t.coefficient + dot(t.exponent, x);
        if (first || (mode_ == TropicalMode::Max ? v > best : v < best)) {
            best = v;
            first = false;
        }
    }
    return best;
}

TropicalPolynomial TropicalPolynomial::padded(size_t n) const {
    if (vars() >= n) return *this;
    std::vector<TropicalTerm> terms = terms_;
    for (auto& t : terms) t.exponent.resize(n, Int(0));
    return TropicalPolynomial(mode_, std::move(terms));
}

std::string TropicalPolynomial::to_string() const {
    std::ostringstream os;
    os << (mode_ == TropicalMode::Max ? "max(" : "min(");
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << ",";
        bool printed = false;
        for (size_t j = 0; j < terms_[i].exponent.size(); ++j) {
            const Int& e = terms_[i].exponent[j];
            if (e == 0) continue;
            if (printed && e > 0) os << "+";
            if (e == -1)
                os << "-";
            else if (e != 1)
                os << e.str();
            os << "x" << (j + 1);
            printed = true;
        }
        if (!printed || terms_[i].coefficient != 0) {
            if (printed && terms_[i].coefficient >= 0) os << "+";
            os << rat_to_string(terms_[i].coefficient);
        }
    }
    os << ")";
    return os.str();
}

namespace {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;

    explicit PolyParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    Int parse_integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return Int(s.substr(start, pos - start));
    }

    // variable name -> 1-based index, or 0 if not a variable here
    size_t try_variable() {
        skip_ws();
        if (pos >= s.size()) return 0;
        char c = s[pos];
        if (c == 'y') {
            ++pos;
            return 2;
        }
        if (c == 'z') {
            ++pos;
            return 3;
        }
        if (c != 'x') return 0;
        ++pos;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            size_t idx = std::stoul(s.substr(start, pos - start));
            if (idx == 0) fail("variable index must be positive");
            return idx;
        }
        return 1;
    }

    TropicalTerm parse_term() {
        std::map<size_t, Int> exps;
        Rat constant = 0;
        bool any = false;
        int sign = 1;
        while (true) {
            skip_ws();
            if (any) {
                if (eat('+'))
                    sign = 1;
                else if (eat('-'))
                    sign = -1;
                else
                    break;
            } else {
                if (eat('-'))
                    sign = -1;
                else if (eat('+'))
                    sign = 1;
            }
            skip_ws();
            size_t var = try_variable();
            if (var) {
                exps[var] += sign;
            } else {
                Int num = parse_integer();
                skip_ws();
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    size_t v = try_variable();
                    if (!v) fail("expected variable after '*'");
                    exps[v] += sign * num;
                } else if ((var = try_variable())) {
                    exps[var] += sign * num;
                } else if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    Int den = parse_integer();
                    if (den == 0) fail("zero denominator");
                    constant += Rat(sign * num) / Rat(den);
                } else {
                    constant += Rat(sign * num);
                }
            }
            any = true;
        }
        if (!any) fail("empty term");
        TropicalTerm t;
        size_t maxvar = exps.empty() ? 0 : exps.rbegin()->first;
        t.exponent.assign(maxvar, Int(0));
        for (const auto& [v, e] : exps) t.exponent[v - 1] = e;
        t.coefficient = constant;
        return t;
    }

    TropicalPolynomial parse() {
        skip_ws();
        TropicalMode mode;
        if (s.compare(pos, 3, "max") == 0) {
            mode = TropicalMode::Max;
            pos += 3;
        } else if (s.compare(pos, 3, "min") == 0) {
            mode = TropicalMode::Min;
            pos += 3;
        } else {
            fail("expected 'max' or 'min'");
        }
        if (!eat('(')) fail("expected '('");
        std::vector<TropicalTerm> terms;
        terms.push_back(parse_term());
        while (eat(',')) terms.push_back(parse_term());
        if (!eat(')')) fail("expected ')'");
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return TropicalPolynomial(mode, std::move(terms));
    }
};

}  // namespace

TropicalPolynomial parse_polynomial(const std::string& text) { return PolyParser(text).parse(); }

NewtonData linearity_complex(const TropicalPolynomial& phi_in, size_t ambient_dim) {
    TropicalPolynomial phi = phi_in.padded(ambient_dim);
    const auto& terms = phi.terms();
    const bool maxmode = phi.mode() == TropicalMode::Max;

    NewtonData out;
    std::vector<QVec> lifted;
    for (const auto& t : terms) {
        QVec p(ambient_dim + 1);
        for (size_t i = 0; i < ambient_dim; ++i) p[i] = Rat(t.exponent[i]);
        p[ambient_dim] = t.coefficient;
        lifted.push_back(std::move(p));
    }
    out.polytope = Polyhedron::from_v(ambient_dim + 1, lifted, {}, {});

    std::vector<Polyhedron> cells;
    for (size_t i = 0; i < terms.size(); ++i) {
        std::vector<Constraint> ineqs;
        for (size_t j = 0; j < terms.size(); ++j) {
            if (j == i) continue;
            // max: term i dominates; min: term i is minimal
            ZVec normal = maxmode ? sub(terms[i].exponent, terms[j].exponent)
                                  : sub(terms[j].exponent, terms[i].exponent);
            Rat offset = maxmode ? terms[j].coefficient - terms[i].coefficient
                                 : terms[i].coefficient - terms[j].coefficient;
            ineqs.push_back({std::move(normal), std::move(offset)});
        }
        Polyhedron cell = Polyhedron::from_h(ambient_dim, ineqs, {});
        if (cell.dim() == static_cast<int>(ambient_dim)) {
            cells.push_back(std::move(cell));
            out.dominant_term.push_back(i);
        }
    }
    out.induced_complex = PolyhedralComplex::from_cells(ambient_dim, std::move(cells));
    return out;
}

namespace {

bool contains_polyhedron(const Polyhedron& outer, const Polyhedron& inner) {
    for (const auto& g : inner.hom_generators()) {
        for (const auto& row : outer.hom_equations())
            if (dot(row, g) != 0) return false;
        for (const auto& row : outer.hom_inequalities())
            if (dot(row, g) < 0) return false;
    }
    for (const auto& l : inner.lineality()) {
        ZVec hl(outer.ambient_dim() + 1, Int(0));
        for (size_t i = 0; i < l.size(); ++i) hl[i + 1] = l[i];
        for (const auto& row : outer.hom_equations())
            if (dot(row, hl) != 0) return false;
        for (const auto& row : outer.hom_inequalities())
            if (dot(row, hl) != 0) return false;
    }
    return true;
}

// the divisor computation shared by both function kinds
TropicalCycle divisor_core(const PolyhedralComplex& domain, const std::vector<QVec>& linear,
                           bool check_support, const TropicalCycle& x) {
    const size_t n = x.ambient_dim();
    if (domain.ambient_dim() != n)
        throw AmbientMismatch("function domain and cycle live in different ambient spaces");
    if (x.is_empty() || x.dim() == 0) return empty_cycle(n);

    if (check_support) {
        for (size_t i = 0; i < x.complex.size(); ++i) {
            std::vector<Polyhedron> pieces;
            for (size_t j = 0; j < domain.size(); ++j) {
                Polyhedron piece = intersect_polyhedra(x.complex.cell(i), domain.cell(j));
                if (piece.dim() == x.dim()) pieces.push_back(std::move(piece));
            }
            if (!support_covers(x.complex.cell(i), pieces))
                throw SupportNotContained("cycle support not contained in the function domain");
        }
    }

    // fast path: every maximal cell already lies in a single domain cell
    TropicalCycle refined;
    std::vector<size_t> domain_cell;
    {
        bool fast = true;
        std::vector<size_t> direct(x.complex.size());
        for (size_t i = 0; i < x.complex.size() && fast; ++i) {
            bool found = false;
            for (size_t j = 0; j < domain.size(); ++j) {
                if (contains_polyhedron(domain.cell(j), x.complex.cell(i))) {
                    direct[i] = j;
                    found = true;
                    break;
                }
            }
            fast = found;
        }
        if (fast) {
            refined = x;
            domain_cell = std::move(direct);
        } else {
            const int d = x.dim();
            std::vector<Polyhedron> cells;
            std::vector<Int> weights;
            std::set<Polyhedron> seen;
            for (size_t i = 0; i < x.complex.size(); ++i) {
                for (size_t j = 0; j < domain.size(); ++j) {
                    Polyhedron piece = intersect_polyhedra(x.complex.cell(i), domain.cell(j));
                    if (piece.dim() != d) continue;
                    if (!seen.insert(piece).second) continue;
                    cells.push_back(std::move(piece));
                    weights.push_back(x.weights[i]);
                    domain_cell.push_back(j);
                }
            }
            refined.complex = PolyhedralComplex::from_cells(n, std::move(cells));
            refined.weights = std::move(weights);
            refined.local_cone = x.local_cone;
        }
    }

    CodimOneData c1 = codim_one_data(refined.complex, refined.local_cone);
    std::vector<Rat> weight(c1.cells.size(), Rat(0));
    parallel_for(c1.cells.size(), [&](size_t t) {
        const Polyhedron& tau = c1.cells[t];
        const auto& adj = c1.adjacent_maximal[t];
        QVec balance_sum(n, Rat(0));
        Rat acc = 0;
        for (size_t si : adj) {
            LatticeNormal ln = lattice_normal(tau, refined.complex.cell(si));
            const QVec& w = linear[domain_cell[si]];
            Rat wu = dot(ln.vector, w);
            acc += Rat(refined.weights[si]) * wu;
            for (size_t i = 0; i < n; ++i) balance_sum[i] += Rat(refined.weights[si] * ln.vector[i]);
        }
        // φ_τ evaluated through any adjacent cell's linear part; the argument
        // lies in V_τ because x is balanced
        acc -= dot(linear[domain_cell[adj[0]]], balance_sum);
        weight[t] = acc;
    });

    std::vector<Polyhedron> cells;
    std::vector<Int> weights;
    for (size_t t = 0; t < c1.cells.size(); ++t) {
        if (weight[t] == 0) continue;
        if (denominator(weight[t]) != 1)
            throw TropError("divisor weight is not an integer; function has non-integer slopes");
        cells.push_back(c1.cells[t]);
        weights.push_back(numerator(weight[t]));
    }
    TropicalCycle out;
    out.complex = PolyhedralComplex::from_cells(n, std::move(cells));
    out.weights = std::move(weights);
    out.local_cone = x.local_cone;
    return out;
}

}  // namespace

TropicalCycle divisor(const TropicalPolynomial& phi, const TropicalCycle& x) {
    NewtonData nd = linearity_complex(phi, x.ambient_dim());
    std::vector<QVec> linear;
    TropicalPolynomial padded = phi.padded(x.ambient_dim());
    for (size_t idx : nd.dominant_term)
        linear.push_back(to_rational(padded.terms()[idx].exponent));
    return divisor_core(nd.induced_complex, linear, false, x);
}

TropicalCycle divisor(const RationalFunctionOnCycle& f, const TropicalCycle& x) {
    std::vector<QVec> linear;
    for (size_t j = 0; j < f.domain().size(); ++j) linear.push_back(f.linear_part(j));
    return divisor_core(f.domain(), linear, true, x);
}

TropicalCycle divisor_power(const TropicalPolynomial& phi, int k, const TropicalCycle& x) {
    TropicalCycle cur = x;
    for (int i = 0; i < k && !cur.is_empty(); ++i) cur = divisor(phi, cur);
    return cur;
}

RationalFunctionOnCycle RationalFunctionOnCycle::from_data(
    const PolyhedralComplex& domain, const std::vector<Rat>& vertex_values,
    const std::vector<Rat>& generator_slopes) {
    RationalFunctionOnCycle f;
    f.domain_ = domain;
    f.vertex_values_ = vertex_values;
    f.generator_slopes_ = generator_slopes;
    const size_t n = domain.ambient_dim();

    PolyhedralComplex::IndexedForm form = domain.indexed_form();
    std::vector<size_t> vertex_slot(form.generators.size(), SIZE_MAX);
    std::vector<size_t> ray_slot(form.generators.size(), SIZE_MAX);
    size_t nv = 0, nr = 0;
    for (size_t g = 0; g < form.generators.size(); ++g) {
        if (form.generators[g][0] != 0)
            vertex_slot[g] = nv++;
        else
            ray_slot[g] = nr++;
    }
    if (vertex_values.size() != nv || generator_slopes.size() != nr + form.lineality.size())
        throw TropError("function data arrays do not match the domain complex");

    for (size_t c = 0; c < domain.size(); ++c) {
        QMat sys(0, n + 1);  // unknowns: w_1..w_n, constant
        QVec rhs;
        for (size_t g : form.cells[c]) {
            const ZVec& hom = form.generators[g];
            QVec row(n + 1);
            if (hom[0] != 0) {
                for (size_t i = 0; i < n; ++i) row[i] = Rat(hom[i + 1]) / Rat(hom[0]);
                row[n] = 1;
                rhs.push_back(vertex_values[vertex_slot[g]]);
            } else {
                for (size_t i = 0; i < n; ++i) row[i] = Rat(hom[i + 1]);
                row[n] = 0;
                rhs.push_back(generator_slopes[ray_slot[g]]);
            }
            sys.append_row(row);
        }
        for (size_t l = 0; l < form.lineality.size(); ++l) {
            QVec row(n + 1);
            for (size_t i = 0; i < n; ++i) row[i] = Rat(form.lineality[l][i + 1]);
            row[n] = 0;
            sys.append_row(row);
            rhs.push_back(generator_slopes[nr + l]);
        }
        auto sol = solve(sys, rhs);
        if (!sol.has_value())
            throw TropError("function values and slopes are inconsistent on a cell");
        QVec w(sol->begin(), sol->begin() + n);
        for (const auto& lat : domain.cell(c).span_lattice()) {
            if (denominator(dot(lat, w)) != 1)
                throw TropError("function has non-integer slope on a lattice direction");
        }
        f.linear_.push_back(std::move(w));
        f.constants_.push_back((*sol)[n]);
    }
    return f;
}

RationalFunctionOnCycle RationalFunctionOnCycle::from_polynomial(const TropicalPolynomial& phi,
                                                                 size_t ambient_dim) {
    NewtonData nd = linearity_complex(phi, ambient_dim);
    TropicalPolynomial padded = phi.padded(ambient_dim);
    PolyhedralComplex::IndexedForm form = nd.induced_complex.indexed_form();
    std::vector<Rat> values, slopes;
    // slopes along rays come from the first cell listing each generator
    std::vector<size_t> owner(form.generators.size(), SIZE_MAX);
    for (size_t c = 0; c < form.cells.size(); ++c)
        for (size_t g : form.cells[c])
            if (owner[g] == SIZE_MAX) owner[g] = c;
    for (size_t g = 0; g < form.generators.size(); ++g) {
        const ZVec& hom = form.generators[g];
        if (hom[0] != 0) {
            QVec v(ambient_dim);
            for (size_t i = 0; i < ambient_dim; ++i) v[i] = Rat(hom[i + 1]) / Rat(hom[0]);
            values.push_back(padded.evaluate(v));
        } else {
            const ZVec& e = padded.terms()[nd.dominant_term[owner[g]]].exponent;
            QVec r(ambient_dim);
            for (size_t i = 0; i < ambient_dim; ++i) r[i] = Rat(hom[i + 1]);
            slopes.push_back(dot(e, r));
        }
    }
    for (size_t l = 0; l < form.lineality.size(); ++l) {
        QVec dir(ambient_dim);
        for (size_t i = 0; i < ambient_dim; ++i) dir[i] = Rat(form.lineality[l][i + 1]);
        slopes.push_back(dot(padded.terms()[nd.dominant_term[0]].exponent, dir));
    }
    return from_data(nd.induced_complex, values, slopes);
}

Rat RationalFunctionOnCycle::evaluate(const QVec& point) const {
    for (size_t c = 0; c < domain_.size(); ++c) {
        if (domain_.cell(c).contains(point)) return dot(linear_[c], point) + constants_[c];
    }
    throw SupportNotContained("point outside the function domain");
}

RationalFunctionOnCycle linear_combination(
    const std::vector<std::pair<Int, RationalFunctionOnCycle>>& combination) {
    if (combination.empty()) throw TropError("empty linear combination");
    const size_t n = combination[0].second.domain().ambient_dim();

    // common refinement of all domains
    PolyhedralComplex refined = combination[0].second.domain();
    const int d = refined.dim();
    for (size_t k = 1; k < combination.size(); ++k) {
        const PolyhedralComplex& dk = combination[k].second.domain();
        if (dk.ambient_dim() != n) throw AmbientMismatch("mixed ambient dimensions");
        std::vector<Polyhedron> cells;
        std::set<Polyhedron> seen;
        for (size_t i = 0; i < refined.size(); ++i)
            for (size_t j = 0; j < dk.size(); ++j) {
                Polyhedron piece = intersect_polyhedra(refined.cell(i), dk.cell(j));
                if (piece.dim() == d && seen.insert(piece).second) cells.push_back(std::move(piece));
            }
        refined = PolyhedralComplex::from_cells(n, std::move(cells));
    }

    // combined affine data per refined cell
    std::vector<QVec> linear(refined.size(), QVec(n, Rat(0)));
    std::vector<Rat> constant(refined.size(), Rat(0));
    for (size_t c = 0; c < refined.size(); ++c) {
        for (const auto& [scalar, f] : combination) {
            bool found = false;
            for (size_t j = 0; j < f.domain().size(); ++j) {
                if (contains_polyhedron(f.domain().cell(j), refined.cell(c))) {
                    for (size_t i = 0; i < n; ++i)
                        linear[c][i] += Rat(scalar) * f.linear_part(j)[i];
                    constant[c] += Rat(scalar) * f.constant(j);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw SupportNotContained("domains of the combination do not share support");
        }
    }

    // rebuild pooled values and slopes
    PolyhedralComplex::IndexedForm form = refined.indexed_form();
    std::vector<size_t> owner(form.generators.size(), SIZE_MAX);
    for (size_t c = 0; c < form.cells.size(); ++c)
        for (size_t g : form.cells[c])
            if (owner[g] == SIZE_MAX) owner[g] = c;
    std::vector<Rat> values, slopes;
    for (size_t g = 0; g < form.generators.size(); ++g) {
        const ZVec& hom = form.generators[g];
        QVec v(n);
        if (hom[0] != 0) {
            for (size_t i = 0; i < n; ++i) v[i] = Rat(hom[i + 1]) / Rat(hom[0]);
            values.push_back(dot(linear[owner[g]], v) + constant[owner[g]]);
        } else {
            for (size_t i = 0; i < n; ++i) v[i] = Rat(hom[i + 1]);
            slopes.push_back(dot(linear[owner[g]], v));
        }
    }
    for (size_t l = 0; l < form.lineality.size(); ++l) {
        QVec dir(n);
        for (size_t i = 0; i < n; ++i) dir[i] = Rat(form.lineality[l][i + 1]);
        slopes.push_back(dot(linear[0], dir));
    }
    return RationalFunctionOnCycle::from_data(refined, values, slopes);
}

}  // namespace tropint
