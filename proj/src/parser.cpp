/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/parser.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <set>

namespace chcelim {

std::string ParseError::str() const {
    std::string out = span.file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
    if (!hint.empty()) { out += " (expected " + hint + ")"; }
    return out;
}

namespace {

std::string joinErrors(const std::vector<ParseError> & errors) {
    std::string out;
    for (auto const & e : errors) {
        if (!out.empty()) { out += "\n"; }
        out += e.str();
    }
    return out.empty() ? "parse failed" : out;
}

} // namespace

ParseFailure::ParseFailure(std::vector<ParseError> errors)
    : std::runtime_error(joinErrors(errors)), errors_(std::move(errors)) {}

namespace {

enum class Tok { Ident, Var, Int, Punct, Label, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int column = 1;
};

struct Failure {
    ParseError error;
};

class Lexer {
public:
    Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skipSpace();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (c == '%') {
                std::size_t start = pos_;
                while (pos_ < src_.size() && src_[pos_] != '\n') { advance(); }
                std::string_view line = src_.substr(start, pos_ - start);
                if (line.size() >= 2 && line[1] == '@') {
                    std::string label(line.substr(2));
                    auto b = label.find_first_not_of(" \t\r");
                    auto e = label.find_last_not_of(" \t\r");
                    t.kind = Tok::Label;
                    t.text = b == std::string::npos ? "" : label.substr(b, e - b + 1);
                    out.push_back(t);
                }
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) { advance(); }
                t.kind = Tok::Int;
                t.text = std::string(src_.substr(start, pos_ - start));
                try {
                    t.value = std::stoll(t.text);
                } catch (const std::out_of_range &) {
                    fail(t, "integer literal out of range", "");
                }
                out.push_back(t);
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    advance();
                }
                t.text = std::string(src_.substr(start, pos_ - start));
                t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Var : Tok::Ident;
                out.push_back(t);
                continue;
            }
            static const char * puncts[] = {"=\\=", "\\==", ":-", "=<", ">=", "==", "\\=", "=", "<", ">", "+",
                                            "-",    "*",    "(",  ")",  "[",  "]",  ",",  "|",  ".", ":"};
            bool matched = false;
            for (const char * p : puncts) {
                std::string_view pv(p);
                if (src_.substr(pos_, pv.size()) == pv) {
                    t.kind = Tok::Punct;
                    t.text = std::string(pv);
                    for (std::size_t i = 0; i < pv.size(); ++i) { advance(); }
                    matched = true;
                    break;
                }
            }
            if (!matched) { fail(t, std::string("unexpected character '") + c + "'", ""); }
            out.push_back(t);
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skipSpace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) { advance(); }
    }
    [[noreturn]] void fail(const Token & t, std::string msg, std::string hint) {
        throw Failure{ParseError{SourceSpan{file_, t.line, t.column}, std::move(msg), std::move(hint)}};
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

/// Untyped syntax tree for terms; sorts are assigned after the whole clause is read.
struct PTerm {
    enum class K { Var, Num, Nil, Cons, Add, Sub, Mul, Neg };
    K kind = K::Num;
    std::string name;
    std::int64_t value = 0;
    std::vector<std::shared_ptr<PTerm>> kids;
    int line = 1;
    int column = 1;
};
using PT = std::shared_ptr<PTerm>;

struct PAtom {
    std::string pred;
    std::vector<PT> args;
    int line = 1;
    int column = 1;
};

struct PRel {
    std::string op;
    PT lhs;
    PT rhs;
    int line = 1;
    int column = 1;
};

struct PItem {
    std::optional<PAtom> atom;
    std::optional<PRel> rel;
    std::optional<bool> lit;
};

struct PClause {
    std::optional<std::string> label;
    std::optional<PAtom> head;
    std::vector<PItem> items;
    int line = 1;
    int column = 1;
};

bool isRelOp(const Token & t) {
    static const std::set<std::string> ops = {"=", "=\\=", "=<", "<", ">", ">=", "==", "\\==", "\\="};
    return t.kind == Tok::Punct && ops.count(t.text) != 0;
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::string file, Program base)
        : toks_(std::move(toks)), file_(std::move(file)), prog_(std::move(base)) {
        for (auto const & c : prog_.clauses) { usedIds_.insert(c.id); }
        seq_ = prog_.clauses.size();
    }

    Program run(std::vector<ParseError> & errors) {
        std::optional<std::string> label;
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Label) {
                label = next().text;
                continue;
            }
            std::size_t startIdx = idx_;
            try {
                if (peek().kind == Tok::Punct && peek().text == ":-") {
                    parseDecl();
                } else {
                    PClause pc = parseClauseSyntax();
                    pc.label = label;
                    prog_.clauses.push_back(typeClause(pc));
                }
            } catch (const Failure & f) {
                errors.push_back(f.error);
                // resynchronise after the next '.'
                if (idx_ == startIdx) { ++idx_; }
                while (peek().kind != Tok::End && !(peek().kind == Tok::Punct && peek().text == ".")) { ++idx_; }
                if (peek().kind != Tok::End) { ++idx_; }
            }
            label.reset();
        }
        return prog_;
    }

private:
    const Token & peek(std::size_t k = 0) const { return toks_[std::min(idx_ + k, toks_.size() - 1)]; }
    const Token & next() {
        const Token & t = toks_[idx_];
        if (idx_ + 1 < toks_.size()) { ++idx_; }
        return t;
    }
    bool isPunct(const std::string & s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Punct && peek(k).text == s;
    }
    [[noreturn]] void failAt(int line, int col, std::string msg, std::string hint = "") const {
        throw Failure{ParseError{SourceSpan{file_, line, col}, std::move(msg), std::move(hint)}};
    }
    [[noreturn]] void failTok(const Token & t, std::string msg, std::string hint = "") const {
        failAt(t.line, t.column, std::move(msg), std::move(hint));
    }
    void expect(const std::string & p) {
        if (!isPunct(p)) {
            failTok(peek(), "unexpected " + describe(peek()), "'" + p + "'");
        }
        next();
    }
    static std::string describe(const Token & t) {
        switch (t.kind) {
            case Tok::End: return "end of input";
            case Tok::Label: return "label";
            default: return "'" + t.text + "'";
        }
    }

    void parseDecl() {
        expect(":-");
        const Token & kw = next();
        if (kw.kind != Tok::Ident || kw.text != "declare") { failTok(kw, "unknown directive " + describe(kw), "'declare'"); }
        const Token & name = next();
        if (name.kind != Tok::Ident) { failTok(name, "bad predicate name " + describe(name), "predicate name"); }
        PredicateInfo info;
        info.name = name.text;
        if (info.name == "false" || info.name == "true") { failTok(name, "reserved name " + info.name); }
        if (isPunct("(")) {
            next();
            if (isPunct(")")) {
                next();
            } else {
                while (true) {
                    const Token & s = next();
                    Sort sort;
                    if (s.kind == Tok::Ident && s.text == "int") {
                        sort = Sort::Int;
                    } else if (s.kind == Tok::Ident && s.text == "bool") {
                        sort = Sort::Bool;
                    } else if (s.kind == Tok::Ident && s.text == "ilist") {
                        sort = Sort::IntList;
                    } else {
                        failTok(s, "unknown sort " + describe(s), "int, bool or ilist");
                    }
                    Mode mode = Mode::In;
                    if (isPunct(":")) {
                        next();
                        const Token & m = next();
                        if (m.kind == Tok::Ident && m.text == "in") {
                            mode = Mode::In;
                        } else if (m.kind == Tok::Ident && m.text == "out") {
                            mode = Mode::Out;
                        } else {
                            failTok(m, "unknown mode " + describe(m), "in or out");
                        }
                    }
                    info.argSorts.push_back(sort);
                    info.modes.push_back(mode);
                    if (isPunct(",")) {
                        next();
                        continue;
                    }
                    expect(")");
                    break;
                }
            }
        }
        while (peek().kind == Tok::Ident) {
            const Token & k = next();
            if (k.text == "total_functional") {
                info.totalFunctional = true;
            } else if (k.text == "definition") {
                info.role = PredRole::Definition;
            } else if (k.text == "difference") {
                info.role = PredRole::Difference;
            } else if (k.text == "not_exists") {
                info.role = PredRole::NotExists;
            } else {
                failTok(k, "unknown declaration flag " + describe(k), "total_functional");
            }
        }
        expect(".");
        if (prog_.isDeclared(info.name) && !(*prog_.info(info.name) == info)) {
            failTok(name, "conflicting redeclaration of " + info.name);
        }
        prog_.declare(std::move(info));
    }

    PAtom parseAtom() {
        const Token & name = next();
        PAtom a;
        a.pred = name.text;
        a.line = name.line;
        a.column = name.column;
        if (isPunct("(")) {
            next();
            if (!isPunct(")")) {
                while (true) {
                    a.args.push_back(parseExpr());
                    if (isPunct(",")) {
                        next();
                        continue;
                    }
                    break;
                }
            }
            expect(")");
        }
        return a;
    }

    PClause parseClauseSyntax() {
        PClause pc;
        const Token & h = peek();
        pc.line = h.line;
        pc.column = h.column;
        if (h.kind != Tok::Ident) { failTok(h, "unexpected " + describe(h), "clause head"); }
        if (h.text == "false") {
            next();
        } else {
            pc.head = parseAtom();
        }
        if (isPunct(":-")) {
            next();
            while (true) {
                pc.items.push_back(parseItem());
                if (isPunct(",")) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(".");
        return pc;
    }

    PItem parseItem() {
        PItem it;
        const Token & t = peek();
        if (t.kind == Tok::Ident && !isRelOp(peek(1))) {
            if (t.text == "true" || t.text == "false") {
                next();
                it.lit = t.text == "true";
                return it;
            }
            it.atom = parseAtom();
            return it;
        }
        PRel r;
        r.line = t.line;
        r.column = t.column;
        r.lhs = parseExpr();
        if (!isRelOp(peek())) { failTok(peek(), "unexpected " + describe(peek()), "relational operator"); }
        r.op = next().text;
        r.rhs = parseExpr();
        it.rel = r;
        return it;
    }

    PT mk(PTerm::K k, const Token & at) {
        auto p = std::make_shared<PTerm>();
        p->kind = k;
        p->line = at.line;
        p->column = at.column;
        return p;
    }

    PT parseExpr() {
        const Token & start = peek();
        PT lhs = parseTermProduct();
        while (isPunct("+") || isPunct("-")) {
            const Token & op = next();
            PT r = mk(op.text == "+" ? PTerm::K::Add : PTerm::K::Sub, start);
            r->kids = {lhs, parseTermProduct()};
            lhs = r;
        }
        return lhs;
    }

    PT parseTermProduct() {
        const Token & start = peek();
        PT lhs = parseFactor();
        while (isPunct("*")) {
            next();
            PT r = mk(PTerm::K::Mul, start);
            r->kids = {lhs, parseFactor()};
            lhs = r;
        }
        return lhs;
    }

    PT parseFactor() {
        const Token & t = peek();
        if (isPunct("-")) {
            next();
            PT r = mk(PTerm::K::Neg, t);
            r->kids = {parseFactor()};
            return r;
        }
        if (isPunct("(")) {
            next();
            PT e = parseExpr();
            expect(")");
            return e;
        }
        if (t.kind == Tok::Int) {
            next();
            PT r = mk(PTerm::K::Num, t);
            r->value = t.value;
            return r;
        }
        if (t.kind == Tok::Var) {
            next();
            PT r = mk(PTerm::K::Var, t);
            r->name = t.text == "_" ? freshAnon() : t.text;
            return r;
        }
        if (isPunct("[")) {
            next();
            if (isPunct("]")) {
                next();
                return mk(PTerm::K::Nil, t);
            }
            std::vector<PT> elems;
            std::vector<Token> at;
            while (true) {
                at.push_back(peek());
                elems.push_back(parseExpr());
                if (isPunct(",")) {
                    next();
                    continue;
                }
                break;
            }
            PT tail;
            if (isPunct("|")) {
                next();
                tail = parseExpr();
            } else {
                tail = mk(PTerm::K::Nil, t);
            }
            expect("]");
            for (std::size_t i = elems.size(); i-- > 0;) {
                PT c = mk(PTerm::K::Cons, at[i]);
                c->kids = {elems[i], tail};
                tail = c;
            }
            return tail;
        }
        failTok(t, "unexpected " + describe(t), "term");
    }

    std::string freshAnon() {
        std::string n;
        do { n = "_G" + std::to_string(++anon_); } while (anonClash(n));
        return n;
    }
    bool anonClash(const std::string & n) const {
        for (auto const & t : toks_) {
            if (t.kind == Tok::Var && t.text == n) { return true; }
        }
        return false;
    }

    // ---- sort inference -------------------------------------------------

    using SortMap = std::map<std::string, Sort>;

    void assign(const PT & p, Sort s, SortMap & sorts) {
        switch (p->kind) {
            case PTerm::K::Var: {
                auto [it, inserted] = sorts.emplace(p->name, s);
                if (!inserted && it->second != s) {
                    failAt(p->line, p->column,
                           "sort mismatch: variable " + p->name + " used as " + std::string(sortName(s)) +
                               " and as " + std::string(sortName(it->second)),
                           std::string(sortName(it->second)));
                }
                break;
            }
            case PTerm::K::Num:
                if (s != Sort::Int) { failAt(p->line, p->column, "sort mismatch: integer literal", std::string(sortName(s))); }
                break;
            case PTerm::K::Nil:
            case PTerm::K::Cons:
                if (s != Sort::IntList) { failAt(p->line, p->column, "sort mismatch: list term", std::string(sortName(s))); }
                if (p->kind == PTerm::K::Cons) {
                    assign(p->kids[0], Sort::Int, sorts);
                    assign(p->kids[1], Sort::IntList, sorts);
                }
                break;
            default:
                if (s != Sort::Int) { failAt(p->line, p->column, "sort mismatch: arithmetic term", std::string(sortName(s))); }
                for (auto const & k : p->kids) { assign(k, Sort::Int, sorts); }
                break;
        }
    }

    /// Sort of a term if it can be read off syntactically or from known variables.
    std::optional<Sort> sortOf(const PT & p, const SortMap & sorts) const {
        switch (p->kind) {
            case PTerm::K::Var: {
                auto it = sorts.find(p->name);
                if (it == sorts.end()) { return std::nullopt; }
                return it->second;
            }
            case PTerm::K::Nil:
            case PTerm::K::Cons: return Sort::IntList;
            default: return Sort::Int;
        }
    }

    Term build(const PT & p, const SortMap & sorts) {
        switch (p->kind) {
            case PTerm::K::Var: return Term::var(p->name, sorts.at(p->name));
            case PTerm::K::Num: return Term::intConst(p->value);
            case PTerm::K::Nil: return Term::nil();
            case PTerm::K::Cons: return Term::cons(build(p->kids[0], sorts), build(p->kids[1], sorts));
            case PTerm::K::Neg: return Term::lin(-build(p->kids[0], sorts).toLinear());
            case PTerm::K::Add:
                return Term::lin(build(p->kids[0], sorts).toLinear() + build(p->kids[1], sorts).toLinear());
            case PTerm::K::Sub:
                return Term::lin(build(p->kids[0], sorts).toLinear() - build(p->kids[1], sorts).toLinear());
            case PTerm::K::Mul: {
                LinExpr a = build(p->kids[0], sorts).toLinear();
                LinExpr b = build(p->kids[1], sorts).toLinear();
                if (a.isConstant()) { return Term::lin(b * a.constant()); }
                if (b.isConstant()) { return Term::lin(a * b.constant()); }
                failAt(p->line, p->column, "non-linear product", "a constant factor");
            }
        }
        failAt(p->line, p->column, "bad term");
    }

    const PredicateInfo & lookupPred(const PAtom & a) const {
        const PredicateInfo * pi = prog_.info(a.pred);
        if (!pi) { failAt(a.line, a.column, "undeclared predicate " + a.pred, ":- declare " + a.pred + "(...)"); }
        if (pi->arity() != a.args.size()) {
            failAt(a.line, a.column,
                   "arity mismatch for " + a.pred + ": got " + std::to_string(a.args.size()) + " arguments",
                   std::to_string(pi->arity()) + " arguments");
        }
        return *pi;
    }

    Clause typeClause(const PClause & pc) {
        SortMap sorts;
        auto typeAtom = [&](const PAtom & a) {
            const PredicateInfo & pi = lookupPred(a);
            for (std::size_t i = 0; i < a.args.size(); ++i) { assign(a.args[i], pi.argSorts[i], sorts); }
        };
        if (pc.head) { typeAtom(*pc.head); }
        for (auto const & it : pc.items) {
            if (it.atom) { typeAtom(*it.atom); }
        }
        // Propagate through relations until nothing changes; a relation whose
        // sides are both unknown gets a default sort from its operator.
        auto propagate = [&] {
            bool changed = true;
            while (changed) {
                changed = false;
                for (auto const & it : pc.items) {
                    if (!it.rel) { continue; }
                    auto sl = sortOf(it.rel->lhs, sorts);
                    auto sr = sortOf(it.rel->rhs, sorts);
                    std::optional<Sort> s = sl ? sl : sr;
                    if (!s) { continue; }
                    std::size_t before = sorts.size();
                    assign(it.rel->lhs, *s, sorts);
                    assign(it.rel->rhs, *s, sorts);
                    if (sorts.size() != before) { changed = true; }
                }
            }
        };
        propagate();
        for (auto const & it : pc.items) {
            if (!it.rel) { continue; }
            if (!sortOf(it.rel->lhs, sorts) && !sortOf(it.rel->rhs, sorts)) {
                Sort s = (it.rel->op == "==" || it.rel->op == "\\==") ? Sort::IntList : Sort::Int;
                assign(it.rel->lhs, s, sorts);
                assign(it.rel->rhs, s, sorts);
                propagate();
            }
        }

        Clause c;
        auto buildAtom = [&](const PAtom & a) {
            Atom r{a.pred, {}};
            for (auto const & t : a.args) { r.args.push_back(build(t, sorts)); }
            return r;
        };
        if (pc.head) { c.head = buildAtom(*pc.head); }
        for (auto const & it : pc.items) {
            if (it.atom) {
                c.body.push_back(buildAtom(*it.atom));
            } else if (it.lit) {
                c.constraint.push_back(ConstraintAtom::boolLit(*it.lit));
            } else {
                const PRel & r = *it.rel;
                Term l = build(r.lhs, sorts);
                Term rr = build(r.rhs, sorts);
                if (l.sort() == Sort::IntList) {
                    bool eq;
                    if (r.op == "=" || r.op == "==") {
                        eq = true;
                    } else if (r.op == "=\\=" || r.op == "\\==" || r.op == "\\=") {
                        eq = false;
                    } else {
                        failAt(r.line, r.column, "ordering relation " + r.op + " between lists", "== or \\==");
                    }
                    c.constraint.push_back(ConstraintAtom::listRel(eq, l, rr));
                } else if (l.sort() == Sort::Bool) {
                    failAt(r.line, r.column, "relations over bool variables are not supported");
                } else {
                    static const std::map<std::string, RelOp> ops = {
                        {"=", RelOp::Eq},   {"==", RelOp::Eq}, {"=\\=", RelOp::Ne}, {"\\==", RelOp::Ne},
                        {"\\=", RelOp::Ne}, {"=<", RelOp::Le}, {"<", RelOp::Lt},    {">", RelOp::Gt},
                        {">=", RelOp::Ge}};
                    c.constraint.push_back(ConstraintAtom::intRel(ops.at(r.op), l, rr));
                }
            }
        }
        if (pc.label) {
            c.id = *pc.label;
            if (c.id.empty()) { failAt(pc.line, pc.column, "empty clause label"); }
            if (usedIds_.count(c.id)) { failAt(pc.line, pc.column, "duplicate clause id " + c.id); }
        } else {
            do { c.id = std::to_string(++seq_); } while (usedIds_.count(c.id));
        }
        usedIds_.insert(c.id);
        return c;
    }

    std::vector<Token> toks_;
    std::string file_;
    Program prog_;
    std::size_t idx_ = 0;
    std::size_t seq_ = 0;
    int anon_ = 0;
    std::set<std::string> usedIds_;
};

ParseResult parseWith(std::string_view text, const std::string & file, Program base) {
    ParseResult res;
    std::vector<Token> toks;
    try {
        toks = Lexer(text, file).run();
    } catch (const Failure & f) {
        res.errors.push_back(f.error);
        return res;
    }
    Parser parser(std::move(toks), file, std::move(base));
    Program p = parser.run(res.errors);
    if (res.errors.empty()) { res.program = std::move(p); }
    return res;
}

} // namespace

ParseResult parseProgram(std::string_view text, const std::string & file) {
    return parseWith(text, file, Program{});
}

Program parseProgramOrThrow(std::string_view text, const std::string & file) {
    auto r = parseProgram(text, file);
    if (!r.ok()) { throw ParseFailure(std::move(r.errors)); }
    return std::move(*r.program);
}

std::vector<Clause> parseClauses(std::string_view text, const Program & decls) {
    auto r = parseWith(text, "<clause>", decls);
    if (!r.ok()) { throw ParseFailure(std::move(r.errors)); }
    return std::vector<Clause>(r.program->clauses.begin() + static_cast<std::ptrdiff_t>(decls.clauses.size()),
                               r.program->clauses.end());
}

Clause parseClause(std::string_view text, const Program & decls) {
    auto cs = parseClauses(text, decls);
    if (cs.size() != 1) {
        throw ParseFailure({ParseError{SourceSpan{"<clause>", 1, 1}, "expected exactly one clause", "one clause"}});
    }
    return cs.front();
}

std::string printDeclaration(const PredicateInfo & info) {
    std::string out = ":- declare " + info.name;
    if (!info.argSorts.empty()) {
        out += "(";
        for (std::size_t i = 0; i < info.argSorts.size(); ++i) {
            if (i > 0) { out += ", "; }
            out += std::string(sortName(info.argSorts[i]));
            out += info.modes[i] == Mode::In ? ":in" : ":out";
        }
        out += ")";
    }
    if (info.totalFunctional) { out += " total_functional"; }
    switch (info.role) {
        case PredRole::Input: break;
        case PredRole::Definition: out += " definition"; break;
        case PredRole::Difference: out += " difference"; break;
        case PredRole::NotExists: out += " not_exists"; break;
    }
    return out + ".";
}

std::string printProgram(const Program & p) {
    std::string out;
    for (auto const & name : p.declOrder) { out += printDeclaration(p.predicates.at(name)) + "\n"; }
    if (!p.clauses.empty()) { out += "\n"; }
    for (auto const & c : p.clauses) { out += "%@ " + c.id + "\n" + c.str() + "\n"; }
    return out;
}

} // namespace chcelim
