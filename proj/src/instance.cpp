#include "lexenum/instance.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace lexenum {

namespace {

// Lines are split on whitespace; ';' is a token of its own even when glued to
// a number, so "0 1; 1 0" and "0 1 ; 1 0" read the same.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            toks.push_back(cur);
            cur.clear();
        }
    };
    for (char ch : line) {
        if (ch == '#')
            break;
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            flush();
        } else if (ch == ';') {
            flush();
            toks.emplace_back(";");
        } else {
            cur.push_back(ch);
        }
    }
    flush();
    return toks;
}

class Parser {
public:
    Csp parse(std::istream& in) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_;
            toks_ = tokenize(raw);
            pos_ = 0;
            if (toks_.empty())
                continue;
            dispatch(take());
            if (pos_ != toks_.size())
                fail("trailing tokens after directive");
        }
        line_ = 0;
        return finish();
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(line_, why);
    }

    const std::string& take() {
        if (pos_ >= toks_.size())
            fail("directive ends early");
        return toks_[pos_++];
    }

    int take_int() {
        const std::string& t = take();
        int v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || p != t.data() + t.size())
            fail("expected integer, got '" + t + "'");
        return v;
    }

    int take_var() {
        const int v = take_int();
        if (v < 1 || v > num_vars_)
            fail("variable index out of range");
        return v - 1;
    }

    void expect(const char* lit) {
        if (take() != lit)
            fail(std::string("expected '") + lit + "'");
    }

    void need_vars() const {
        if (num_vars_ < 0)
            fail("directive appears before vars");
    }

    void dispatch(const std::string& dir) {
        if (dir == "csp") {
            if (!csp_.name.empty())
                fail("duplicate csp directive");
            csp_.name = take();
        } else if (dir == "vars") {
            if (num_vars_ >= 0)
                fail("duplicate vars directive");
            num_vars_ = take_int();
            if (num_vars_ < 1)
                fail("variable count must be positive");
            csp_.num_vars = num_vars_;
            doms_.resize(static_cast<std::size_t>(num_vars_));
        } else if (dir == "dom") {
            need_vars();
            const int var = take_var();
            const int lo = take_int();
            const int hi = take_int();
            if (doms_[static_cast<std::size_t>(var)])
                fail("duplicate domain for variable");
            if (lo > hi)
                fail("empty domain (min greater than max)");
            doms_[static_cast<std::size_t>(var)] = Domain(lo, hi);
        } else if (dir == "ext") {
            need_vars();
            parse_ext();
        } else if (dir == "neq") {
            need_vars();
            BinaryNeq c;
            c.a = take_var();
            c.b = take_var();
            csp_.constraints.emplace_back(c);
        } else if (dir == "alldiff") {
            need_vars();
            std::vector<int> vars;
            while (pos_ < toks_.size())
                vars.push_back(take_var());
            if (vars.empty())
                fail("alldiff lists no variables");
            for (std::size_t i = 0; i < vars.size(); ++i)
                for (std::size_t j = i + 1; j < vars.size(); ++j)
                    csp_.constraints.emplace_back(BinaryNeq{vars[i], vars[j]});
        } else if (dir == "sym") {
            need_vars();
            std::vector<int> image(static_cast<std::size_t>(num_vars_));
            for (int& v : image)
                v = take_var();
            if (!is_permutation_image(image))
                fail("symmetry image is not a permutation of the variables");
            csp_.symmetries.emplace_back(std::move(image));
        } else if (dir == "lex") {
            need_vars();
            const int k = take_int();
            if (k < 0)
                fail("negative pair count");
            LexLeq c;
            c.lhs.resize(static_cast<std::size_t>(k));
            c.rhs.resize(static_cast<std::size_t>(k));
            for (int& v : c.lhs)
                v = take_var();
            expect("<=");
            for (int& v : c.rhs)
                v = take_var();
            csp_.lex_constraints.push_back(std::move(c));
        } else if (dir == "order") {
            need_vars();
            if (csp_.declared_order)
                fail("duplicate order directive");
            std::vector<int> order(static_cast<std::size_t>(num_vars_));
            for (int& v : order)
                v = take_var();
            if (!is_permutation_image(order))
                fail("order line is not a permutation of the variables");
            csp_.declared_order = std::move(order);
        } else {
            fail("unknown directive '" + dir + "'");
        }
    }

    void parse_ext() {
        const int k = take_int();
        if (k < 1)
            fail("arity must be positive");
        Extensional c;
        c.scope.resize(static_cast<std::size_t>(k));
        for (int& v : c.scope)
            v = take_var();
        expect(";");
        while (pos_ < toks_.size()) {
            std::vector<int> tuple(static_cast<std::size_t>(k));
            for (int& v : tuple) {
                if (pos_ < toks_.size() && toks_[pos_] == ";")
                    fail("tuple is shorter than the arity");
                v = take_int();
            }
            c.tuples.push_back(std::move(tuple));
            if (pos_ < toks_.size())
                expect(";");
        }
        csp_.constraints.emplace_back(std::move(c));
    }

    Csp finish() {
        if (num_vars_ < 0)
            fail("missing vars directive");
        for (int x = 0; x < num_vars_; ++x) {
            if (!doms_[static_cast<std::size_t>(x)]) {
                std::ostringstream os;
                os << "variable " << x + 1 << " has no domain";
                fail(os.str());
            }
            csp_.domains.push_back(*doms_[static_cast<std::size_t>(x)]);
        }
        const ValidationReport rep = validate_csp(csp_);
        if (!rep.ok()) {
            std::string joined;
            for (const std::string& e : rep.errors) {
                if (!joined.empty())
                    joined += "; ";
                joined += e;
            }
            fail(joined);
        }
        return std::move(csp_);
    }

    Csp csp_;
    int num_vars_ = -1;
    std::vector<std::optional<Domain>> doms_;
    int line_ = 0;
    std::vector<std::string> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Csp parse_instance(std::istream& in) { return Parser{}.parse(in); }

Csp parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_instance(in);
}

std::string print_instance(const Csp& csp) {
    std::ostringstream os;
    if (!csp.name.empty())
        os << "csp " << csp.name << "\n";
    os << "vars " << csp.num_vars << "\n";
    for (int x = 0; x < csp.num_vars; ++x) {
        const Domain& d = csp.domains[static_cast<std::size_t>(x)];
        os << "dom " << x + 1 << " " << d.initial_min() << " " << d.initial_max()
           << "\n";
    }
    for (const Constraint& c : csp.constraints) {
        if (const auto* ext = std::get_if<Extensional>(&c)) {
            os << "ext " << ext->scope.size();
            for (int v : ext->scope)
                os << " " << v + 1;
            os << " ;";
            for (std::size_t t = 0; t < ext->tuples.size(); ++t) {
                for (int v : ext->tuples[t])
                    os << " " << v;
                if (t + 1 < ext->tuples.size())
                    os << " ;";
            }
            os << "\n";
        } else if (const auto* neq = std::get_if<BinaryNeq>(&c)) {
            os << "neq " << neq->a + 1 << " " << neq->b + 1 << "\n";
        } else {
            throw std::invalid_argument(
                "the instance format has no directive for unary value lists");
        }
    }
    for (const Permutation& s : csp.symmetries) {
        os << "sym";
        for (int v : s.image())
            os << " " << v + 1;
        os << "\n";
    }
    for (const LexLeq& c : csp.lex_constraints) {
        os << "lex " << c.size();
        for (int v : c.lhs)
            os << " " << v + 1;
        os << " <=";
        for (int v : c.rhs)
            os << " " << v + 1;
        os << "\n";
    }
    if (csp.declared_order) {
        os << "order";
        for (int v : *csp.declared_order)
            os << " " << v + 1;
        os << "\n";
    }
    return os.str();
}

} // namespace lexenum
