#include "kanon/ilp.hpp"

#include "kanon/errors.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace kanon {

int IlpModel::add_var(std::string name, double lo, double hi, double obj, bool integral) {
    if (lo > hi) throw ValidationError("variable '" + name + "' has empty bound interval");
    vars.push_back({std::move(name), lo, hi, obj, integral});
    return static_cast<int>(vars.size()) - 1;
}

int IlpModel::add_row(std::string name, RowSense sense, double rhs) {
    rows.push_back({std::move(name), {}, sense, rhs});
    return static_cast<int>(rows.size()) - 1;
}

void IlpModel::add_coeff(int row, int var, double coeff) {
    if (coeff != 0.0) rows[row].coeffs.emplace_back(var, coeff);
}

namespace {

void write_number(std::ostream& out, double x) {
    if (x == std::floor(x) && std::abs(x) < 1e15) {
        out << static_cast<long long>(x);
    } else {
        std::ostringstream ss;
        ss.precision(17);
        ss << x;
        out << ss.str();
    }
}

void write_terms(std::ostream& out, const std::vector<std::pair<int, double>>& terms,
                 const IlpModel& model) {
    bool first = true;
    for (auto [var, coeff] : terms) {
        if (coeff == 0.0) continue;
        if (first) {
            if (coeff < 0) out << "- ";
            first = false;
        } else {
            out << (coeff < 0 ? " - " : " + ");
        }
        double mag = std::abs(coeff);
        if (mag != 1.0) {
            write_number(out, mag);
            out << " ";
        }
        out << model.vars[var].name;
    }
    if (first) out << "0";
}

} // namespace

void write_lp(const IlpModel& model, std::ostream& out) {
    out << "Minimize\n obj: ";
    std::vector<std::pair<int, double>> obj_terms;
    for (std::size_t j = 0; j < model.vars.size(); ++j)
        if (model.vars[j].obj != 0.0) obj_terms.emplace_back(static_cast<int>(j), model.vars[j].obj);
    write_terms(out, obj_terms, model);
    out << "\nSubject To\n";
    for (const IlpRow& row : model.rows) {
        out << " " << row.name << ": ";
        write_terms(out, row.coeffs, model);
        switch (row.sense) {
        case RowSense::le: out << " <= "; break;
        case RowSense::ge: out << " >= "; break;
        case RowSense::eq: out << " = "; break;
        }
        write_number(out, row.rhs);
        out << "\n";
    }
    out << "Bounds\n";
    for (const IlpVariable& v : model.vars) {
        out << " ";
        if (v.lo == -kInfinity)
            out << "-inf";
        else
            write_number(out, v.lo);
        out << " <= " << v.name << " <= ";
        if (v.hi == kInfinity)
            out << "+inf";
        else
            write_number(out, v.hi);
        out << "\n";
    }
    std::vector<const IlpVariable*> binaries, generals;
    for (const IlpVariable& v : model.vars) {
        if (!v.integral) continue;
        if (v.lo == 0.0 && v.hi == 1.0)
            binaries.push_back(&v);
        else
            generals.push_back(&v);
    }
    if (!binaries.empty()) {
        out << "Binaries\n";
        for (const IlpVariable* v : binaries) out << " " << v->name << "\n";
    }
    if (!generals.empty()) {
        out << "Generals\n";
        for (const IlpVariable* v : generals) out << " " << v->name << "\n";
    }
    out << "End\n";
}

std::string write_lp(const IlpModel& model) {
    std::ostringstream ss;
    write_lp(model, ss);
    return ss.str();
}

namespace {

struct Token {
    enum Kind { word, number, plus, minus, rel_le, rel_ge, rel_eq, colon, end } kind;
    std::string text;
    double value = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::istream& in) : in_(in) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        int c = in_.get();
        while (c != EOF && std::isspace(c)) c = in_.get();
        if (c == EOF) {
            tok_ = {Token::end, "", 0.0};
            return;
        }
        if (c == '+') { tok_ = {Token::plus, "+", 0.0}; return; }
        if (c == '-') {
            // "-inf" is a bound token; bare '-' is a sign.
            if (in_.peek() == 'i') {
                std::string w = "-";
                while (std::isalpha(in_.peek())) w += static_cast<char>(in_.get());
                tok_ = {Token::word, w, 0.0};
                return;
            }
            tok_ = {Token::minus, "-", 0.0};
            return;
        }
        if (c == ':') { tok_ = {Token::colon, ":", 0.0}; return; }
        if (c == '<' || c == '>') {
            if (in_.peek() == '=') in_.get();
            tok_ = {c == '<' ? Token::rel_le : Token::rel_ge, "", 0.0};
            return;
        }
        if (c == '=') { tok_ = {Token::rel_eq, "=", 0.0}; return; }
        if (std::isdigit(c) || c == '.') {
            std::string num(1, static_cast<char>(c));
            while (std::isdigit(in_.peek()) || in_.peek() == '.' || in_.peek() == 'e' ||
                   in_.peek() == 'E' || ((in_.peek() == '+' || in_.peek() == '-') &&
                                         (num.back() == 'e' || num.back() == 'E')))
                num += static_cast<char>(in_.get());
            tok_ = {Token::number, num, std::stod(num)};
            return;
        }
        std::string w(1, static_cast<char>(c));
        while (std::isalnum(in_.peek()) || in_.peek() == '_' || in_.peek() == '(' ||
               in_.peek() == ')' || in_.peek() == ',')
            w += static_cast<char>(in_.get());
        tok_ = {Token::word, w, 0.0};
    }

    std::istream& in_;
    Token tok_;
};

bool word_is(const Token& t, const std::string& s) {
    if (t.kind != Token::word) return false;
    if (t.text.size() != s.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::tolower(t.text[i]) != std::tolower(s[i])) return false;
    return true;
}

} // namespace

IlpModel parse_lp(std::istream& in) {
    Lexer lex(in);
    IlpModel model;
    std::map<std::string, int> var_index;

    auto intern = [&](const std::string& name) {
        auto it = var_index.find(name);
        if (it != var_index.end()) return it->second;
        int idx = model.add_var(name, 0.0, kInfinity, 0.0, false);
        var_index.emplace(name, idx);
        return idx;
    };

    if (!word_is(lex.peek(), "minimize"))
        throw ParseError("LP file must start with 'Minimize'");
    lex.next();

    enum Section { objective, subject_to, bounds, binaries, generals, done };
    Section section = objective;

    auto section_keyword = [&](const Token& t) -> int {
        if (word_is(t, "subject")) return subject_to;
        if (word_is(t, "st") || word_is(t, "s.t.")) return subject_to;
        if (word_is(t, "bounds")) return bounds;
        if (word_is(t, "binaries") || word_is(t, "binary")) return binaries;
        if (word_is(t, "generals") || word_is(t, "general")) return generals;
        if (word_is(t, "end")) return done;
        return -1;
    };

    // Reads terms up to a relation, section keyword, or stream end. Returns
    // the accumulated linear expression.
    auto parse_expr = [&](std::vector<std::pair<int, double>>& terms) {
        double sign = 1.0;
        bool have_sign = false;
        double pending_coeff = 1.0;
        bool have_coeff = false;
        while (true) {
            const Token& t = lex.peek();
            if (t.kind == Token::end || t.kind == Token::rel_le || t.kind == Token::rel_ge ||
                t.kind == Token::rel_eq)
                break;
            if (t.kind == Token::word && section_keyword(t) >= 0 && !have_sign && !have_coeff)
                break;
            if (t.kind == Token::plus) {
                lex.next();
                sign = 1.0;
                have_sign = true;
            } else if (t.kind == Token::minus) {
                lex.next();
                sign = -1.0;
                have_sign = true;
            } else if (t.kind == Token::number) {
                pending_coeff = lex.next().value;
                have_coeff = true;
            } else if (t.kind == Token::word) {
                std::string name = lex.next().text;
                terms.emplace_back(intern(name), sign * pending_coeff);
                sign = 1.0;
                pending_coeff = 1.0;
                have_sign = have_coeff = false;
            } else {
                throw ParseError("unexpected token '" + t.text + "' in expression");
            }
        }
        // A trailing bare number is a constant term; only valid as "0".
        if (have_coeff && pending_coeff != 0.0)
            throw ParseError("constant terms are not supported in LP expressions");
    };

    // Objective: optional "obj:" label then expression.
    {
        std::vector<std::pair<int, double>> terms;
        if (lex.peek().kind == Token::word) {
            Token label = lex.next();
            if (lex.peek().kind == Token::colon) {
                lex.next();
            } else {
                // Not a label; it is the first variable of the expression.
                terms.emplace_back(intern(label.text), 1.0);
            }
        }
        parse_expr(terms);
        for (auto [var, coeff] : terms) model.vars[var].obj += coeff;
    }

    while (true) {
        const Token& t = lex.peek();
        if (t.kind == Token::end) break;
        int kw = section_keyword(t);
        if (kw >= 0) {
            lex.next();
            if (kw == subject_to && word_is(lex.peek(), "to")) lex.next();
            section = static_cast<Section>(kw);
            if (section == done) break;
            continue;
        }
        if (section == subject_to) {
            std::string row_name = "c" + std::to_string(model.rows.size());
            std::vector<std::pair<int, double>> terms;
            if (t.kind == Token::word) {
                Token first = lex.next();
                if (lex.peek().kind == Token::colon) {
                    lex.next();
                    row_name = first.text;
                } else {
                    terms.emplace_back(intern(first.text), 1.0);
                }
            }
            parse_expr(terms);
            RowSense sense;
            switch (lex.next().kind) {
            case Token::rel_le: sense = RowSense::le; break;
            case Token::rel_ge: sense = RowSense::ge; break;
            case Token::rel_eq: sense = RowSense::eq; break;
            default: throw ParseError("expected relation in constraint '" + row_name + "'");
            }
            double rhs_sign = 1.0;
            if (lex.peek().kind == Token::minus) {
                lex.next();
                rhs_sign = -1.0;
            } else if (lex.peek().kind == Token::plus) {
                lex.next();
            }
            if (lex.peek().kind != Token::number)
                throw ParseError("expected numeric right-hand side in '" + row_name + "'");
            double rhs = rhs_sign * lex.next().value;
            int row = model.add_row(row_name, sense, rhs);
            for (auto [var, coeff] : terms) model.add_coeff(row, var, coeff);
        } else if (section == bounds) {
            // "<lo> <= name <= <hi>" with inf spellings.
            auto read_bound = [&]() -> double {
                double sign = 1.0;
                if (lex.peek().kind == Token::minus) {
                    lex.next();
                    sign = -1.0;
                } else if (lex.peek().kind == Token::plus) {
                    lex.next();
                }
                Token b = lex.next();
                if (b.kind == Token::number) return sign * b.value;
                if (word_is(b, "inf") || word_is(b, "-inf") || word_is(b, "infinity"))
                    return (b.text[0] == '-' ? -1.0 : sign) * kInfinity;
                throw ParseError("expected bound value, got '" + b.text + "'");
            };
            double lo = read_bound();
            if (lex.next().kind != Token::rel_le) throw ParseError("expected '<=' in bounds line");
            if (lex.peek().kind != Token::word) throw ParseError("expected variable name in bounds line");
            int var = intern(lex.next().text);
            if (lex.next().kind != Token::rel_le) throw ParseError("expected '<=' in bounds line");
            double hi = read_bound();
            model.vars[var].lo = lo;
            model.vars[var].hi = hi;
        } else if (section == binaries || section == generals) {
            if (t.kind != Token::word) throw ParseError("expected variable name");
            int var = intern(lex.next().text);
            model.vars[var].integral = true;
            if (section == binaries) {
                model.vars[var].lo = 0.0;
                model.vars[var].hi = 1.0;
            }
        } else {
            throw ParseError("unexpected token '" + t.text + "'");
        }
    }
    return model;
}

IlpModel parse_lp(const std::string& text) {
    std::istringstream ss(text);
    return parse_lp(ss);
}

} // namespace kanon
