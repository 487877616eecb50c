#include "folcoh/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace folcoh {

namespace {

struct Token {
    enum Kind { Name, Number, Sym } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Name, text.substr(i, j - i)});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back({Token::Number, text.substr(i, j - i)});
            i = j;
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '=') {
            out.push_back({Token::Sym, std::string(1, c)});
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

// Shared expression parser. Unbound parameter names are collected rather
// than failing immediately so a manifest can report them all at once.
class ExprParser {
public:
    ExprParser(const std::map<std::string, int>& gen_index,
               const std::map<std::string, Scalar>& params,
               std::set<std::string>& unbound)
        : gen_index_(gen_index), params_(params), unbound_(unbound) {}

    Form parse(const std::vector<Token>& toks, int expected_degree) {
        Form result;
        bool have_degree = false;
        std::size_t i = 0;
        bool first_term = true;
        while (i < toks.size()) {
            int sign = 1;
            if (toks[i].kind == Token::Sym && (toks[i].text == "+" || toks[i].text == "-")) {
                sign = toks[i].text == "-" ? -1 : 1;
                ++i;
            } else if (!first_term) {
                throw ParseError("expected '+' or '-' between terms");
            }
            first_term = false;
            auto [coeff, index_list] = parse_term(toks, i);
            coeff *= sign;
            Form term = monomial_from_written_order(index_list, coeff);
            if (coeff == 0)
                continue;
            if (expected_degree >= 0 && term.degree() != expected_degree)
                throw ParseError("term of degree " + std::to_string(term.degree()) +
                                 " where degree " + std::to_string(expected_degree) +
                                 " was expected");
            if (!have_degree) {
                result = term;
                have_degree = true;
            } else {
                if (term.degree() != result.degree())
                    throw ParseError("mixed degrees in form expression");
                result = result + term;
            }
        }
        if (!have_degree)
            result = Form::zero(std::max(expected_degree, 0));
        return result;
    }

private:
    std::pair<Scalar, MultiIndex> parse_term(const std::vector<Token>& toks, std::size_t& i) {
        Scalar coeff(1);
        MultiIndex written;
        bool saw_monomial = false;
        bool divide_next = false;
        while (i < toks.size()) {
            const Token& t = toks[i];
            if (t.kind == Token::Sym && (t.text == "+" || t.text == "-"))
                break;
            if (t.kind == Token::Sym && (t.text == "*" || t.text == "/")) {
                divide_next = t.text == "/";
                ++i;
                continue;
            }
            if (t.kind == Token::Number) {
                apply_factor(coeff, Scalar(Integer(t.text)), divide_next);
                divide_next = false;
                ++i;
                continue;
            }
            if (t.kind == Token::Name) {
                bool is_generator = gen_index_.count(t.text) > 0;
                bool chained = i + 1 < toks.size() && toks[i + 1].kind == Token::Sym &&
                               toks[i + 1].text == "^";
                if (is_generator || chained) {
                    if (divide_next)
                        throw ParseError("cannot divide by a wedge monomial");
                    if (saw_monomial)
                        throw ParseError("more than one wedge monomial in a term");
                    parse_monomial(toks, i, written);
                    saw_monomial = true;
                    continue;
                }
                apply_factor(coeff, param_value(t.text), divide_next);
                divide_next = false;
                ++i;
                continue;
            }
            throw ParseError("unexpected token '" + t.text + "' in expression");
        }
        if (divide_next)
            throw ParseError("dangling '/' in coefficient");
        return {coeff, written};
    }

    void parse_monomial(const std::vector<Token>& toks, std::size_t& i, MultiIndex& written) {
        while (true) {
            if (i >= toks.size() || toks[i].kind != Token::Name)
                throw ParseError("expected generator name in wedge monomial");
            auto it = gen_index_.find(toks[i].text);
            if (it == gen_index_.end())
                throw ParseError("undeclared generator '" + toks[i].text + "' in wedge monomial");
            written.push_back(it->second);
            ++i;
            if (i < toks.size() && toks[i].kind == Token::Sym && toks[i].text == "^")
                ++i;
            else
                break;
        }
    }

    void apply_factor(Scalar& coeff, const Scalar& value, bool divide) {
        if (divide) {
            if (value == 0)
                throw ParseError("division by zero in coefficient");
            coeff /= value;
        } else {
            coeff *= value;
        }
    }

    Scalar param_value(const std::string& name) {
        auto it = params_.find(name);
        if (it == params_.end()) {
            unbound_.insert(name);
            return Scalar(1); // placeholder; parse fails afterwards
        }
        return it->second;
    }

    static Form monomial_from_written_order(const MultiIndex& written, const Scalar& coeff) {
        // Sort the written index order, tracking the permutation parity.
        MultiIndex idx = written;
        int sign = 1;
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                if (idx[a] == idx[b])
                    return Form::zero(static_cast<int>(idx.size())); // repeated generator
                if (idx[a] > idx[b])
                    sign = -sign;
            }
        std::sort(idx.begin(), idx.end());
        return Form::monomial(idx, coeff * sign);
    }

    const std::map<std::string, int>& gen_index_;
    const std::map<std::string, Scalar>& params_;
    std::set<std::string>& unbound_;
};

std::vector<std::string> manifest_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos)
            continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        lines.push_back(line.substr(a, b - a + 1));
    }
    return lines;
}

} // namespace

bool Model::is_leafwise(int i) const {
    return std::binary_search(leafwise.begin(), leafwise.end(), i);
}

Scalar Model::structure_constant(int k, int i, int j) const {
    if (i == j)
        return Scalar(0);
    Scalar c = d_generator[static_cast<std::size_t>(k)].coefficient(
        i < j ? MultiIndex{i, j} : MultiIndex{j, i});
    return i < j ? c : -c;
}

bool Model::operator==(const Model& other) const {
    return generators == other.generators && d_generator == other.d_generator &&
           leafwise == other.leafwise && params == other.params;
}

Model parse_manifest(const std::string& text, const std::map<std::string, Scalar>& overrides) {
    Model m;
    std::vector<std::string> lines = manifest_lines(text);

    // Declarations first so structure equations can appear in any order.
    for (const std::string& line : lines) {
        std::istringstream in(line);
        std::string word;
        in >> word;
        if (word == "generator") {
            std::string name;
            if (!(in >> name))
                throw ParseError("generator line without a name");
            std::string extra;
            if (in >> extra)
                throw ParseError("one generator per line: '" + line + "'");
            if (m.generator_index.count(name))
                throw ParseError("duplicate generator '" + name + "'");
            m.generator_index[name] = m.dim();
            m.generators.push_back(name);
        } else if (word == "param") {
            std::string name, eq, value;
            if (!(in >> name >> eq >> value) || eq != "=")
                throw ParseError("expected 'param <name> = <rational>': '" + line + "'");
            if (m.params.count(name))
                throw ParseError("duplicate param '" + name + "'");
            m.params[name] = scalar_from_string(value);
            m.param_order.push_back(name);
        }
    }
    for (const auto& [name, value] : overrides) {
        if (m.generator_index.count(name))
            throw ParseError("parameter '" + name + "' collides with a generator");
        if (!m.params.count(name))
            m.param_order.push_back(name);
        m.params[name] = value;
    }
    m.d_generator.assign(static_cast<std::size_t>(m.dim()), Form::zero(2));

    std::set<std::string> unbound;
    std::vector<bool> d_seen(static_cast<std::size_t>(m.dim()), false);
    for (const std::string& line : lines) {
        std::istringstream in(line);
        std::string word;
        in >> word;
        if (word == "generator" || word == "param")
            continue;
        if (word == "leafwise") {
            std::string name;
            bool any = false;
            while (in >> name) {
                any = true;
                auto it = m.generator_index.find(name);
                if (it == m.generator_index.end())
                    throw ParseError("leafwise references undeclared generator '" + name + "'");
                if (!std::count(m.leafwise.begin(), m.leafwise.end(), it->second))
                    m.leafwise.push_back(it->second);
            }
            if (!any)
                throw ParseError("leafwise line without generator names");
            continue;
        }
        if (word == "d") {
            std::string rest;
            std::getline(in, rest);
            std::vector<Token> toks = tokenize(rest);
            if (toks.empty() || toks[0].kind != Token::Name)
                throw ParseError("expected 'd <generator> = <expr>': '" + line + "'");
            auto it = m.generator_index.find(toks[0].text);
            if (it == m.generator_index.end())
                throw ParseError("structure equation for undeclared generator '" + toks[0].text +
                                 "'");
            if (toks.size() < 2 || toks[1].kind != Token::Sym || toks[1].text != "=")
                throw ParseError("expected '=' in structure equation: '" + line + "'");
            if (d_seen[static_cast<std::size_t>(it->second)])
                throw ParseError("duplicate structure equation for '" + toks[0].text + "'");
            d_seen[static_cast<std::size_t>(it->second)] = true;
            ExprParser parser(m.generator_index, m.params, unbound);
            std::vector<Token> expr(toks.begin() + 2, toks.end());
            m.d_generator[static_cast<std::size_t>(it->second)] = parser.parse(expr, 2);
            continue;
        }
        throw ParseError("unknown directive '" + word + "'");
    }
    if (!unbound.empty()) {
        std::string names;
        for (const auto& n : unbound)
            names += (names.empty() ? "" : ", ") + n;
        throw ParseError("unbound parameter " + names);
    }
    if (m.dim() == 0)
        throw ParseError("manifest declares no generators");
    std::sort(m.leafwise.begin(), m.leafwise.end());
    return m;
}

std::string echo_manifest(const Model& m) {
    std::ostringstream out;
    for (const auto& g : m.generators)
        out << "generator " << g << "\n";
    for (const auto& name : m.param_order)
        out << "param " << name << " = " << scalar_to_string(m.params.at(name)) << "\n";
    for (int i = 0; i < m.dim(); ++i) {
        const Form& d = m.d_generator[static_cast<std::size_t>(i)];
        if (!d.is_zero())
            out << "d " << m.generators[static_cast<std::size_t>(i)] << " = "
                << d.to_string(m.generators) << "\n";
    }
    if (!m.leafwise.empty()) {
        out << "leafwise";
        for (int i : m.leafwise)
            out << " " << m.generators[static_cast<std::size_t>(i)];
        out << "\n";
    }
    return out.str();
}

Form parse_form_expr(const std::string& text, const Model& m, int expected_degree) {
    std::set<std::string> unbound;
    ExprParser parser(m.generator_index, m.params, unbound);
    Form f = parser.parse(tokenize(text), expected_degree);
    if (!unbound.empty())
        throw ParseError("unbound parameter " + *unbound.begin());
    return f;
}

Form differential(const Form& a, const Model& m) {
    Form out(a.degree() + 1);
    for (const auto& [idx, c] : a.terms()) {
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const Form& dg = m.d_generator[static_cast<std::size_t>(idx[t])];
            if (dg.is_zero())
                continue;
            MultiIndex left(idx.begin(), idx.begin() + static_cast<long>(t));
            MultiIndex right(idx.begin() + static_cast<long>(t) + 1, idx.end());
            Scalar sign = (t % 2 == 0) ? c : -c;
            Form piece = wedge(Form::monomial(left, sign), wedge(dg, Form::monomial(right)));
            out = out + piece;
        }
    }
    return out;
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

ValidationReport validate_model(const Model& m) {
    ValidationReport report;

    CheckResult jacobi{"d_squared_zero", true, ""};
    for (int i = 0; i < m.dim(); ++i) {
        Form dd = differential(m.d_generator[static_cast<std::size_t>(i)], m);
        if (!dd.is_zero()) {
            jacobi.pass = false;
            jacobi.witness = "d(d " + m.generators[static_cast<std::size_t>(i)] +
                             ") = " + dd.to_string(m.generators);
            break;
        }
    }
    report.checks.push_back(jacobi);

    CheckResult involutive{"leafwise_involutive", true, ""};
    CheckResult riemannian{"bundle_like_metric", true, ""};
    if (m.has_foliation()) {
        for (int k = 0; k < m.dim() && involutive.pass; ++k) {
            if (m.is_leafwise(k))
                continue;
            for (const auto& [idx, c] : m.d_generator[static_cast<std::size_t>(k)].terms()) {
                if (m.is_leafwise(idx[0]) && m.is_leafwise(idx[1])) {
                    involutive.pass = false;
                    involutive.witness =
                        "d " + m.generators[static_cast<std::size_t>(k)] + " contains " +
                        m.generators[static_cast<std::size_t>(idx[0])] + "^" +
                        m.generators[static_cast<std::size_t>(idx[1])];
                    break;
                }
            }
        }
        // Bundle-likeness of the orthonormal metric: <[X,V],Y> + <X,[Y,V]> = 0
        // for leafwise V and transverse X, Y, i.e. c^j_{il} + c^i_{jl} = 0.
        for (int l : m.leafwise) {
            for (int i = 0; i < m.dim() && riemannian.pass; ++i) {
                if (m.is_leafwise(i))
                    continue;
                for (int j = i; j < m.dim(); ++j) {
                    if (m.is_leafwise(j))
                        continue;
                    if (m.structure_constant(j, i, l) + m.structure_constant(i, j, l) != 0) {
                        riemannian.pass = false;
                        riemannian.witness =
                            "V=" + m.generators[static_cast<std::size_t>(l)] +
                            " X=" + m.generators[static_cast<std::size_t>(i)] +
                            " Y=" + m.generators[static_cast<std::size_t>(j)];
                        break;
                    }
                }
            }
            if (!riemannian.pass)
                break;
        }
    }
    report.checks.push_back(involutive);
    report.checks.push_back(riemannian);

    for (int a = 0; a < m.dim(); ++a) {
        Scalar trace(0);
        for (int k = 0; k < m.dim(); ++k)
            trace += m.structure_constant(k, a, k);
        if (trace != 0) {
            report.unimodular = false;
            report.unimodular_witness = "tr ad(" + m.generators[static_cast<std::size_t>(a)] +
                                        ") = " + scalar_to_string(trace);
            break;
        }
    }
    return report;
}

} // namespace folcoh
