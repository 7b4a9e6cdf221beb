#include "tracecalc/spec_dsl.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <map>
#include <set>

namespace tracecalc {

std::string Diagnostic::render() const {
    return origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

static std::string join_diags(const std::vector<Diagnostic>& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i)
            out += "\n";
        out += d[i].render();
    }
    return out;
}

SpecParseError::SpecParseError(std::vector<Diagnostic> diags)
    : std::runtime_error(join_diags(diags)), diagnostics(std::move(diags)) {}

namespace {

enum class Tok {
    Ident,
    String,
    Number,
    KwEventtype,
    KwMatches,
    KwEmpty,
    KwLet,
    KwTrue,
    KwFalse,
    KwNull,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Eq,
    Or,
    And,
    Bar,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    Value value;
    SourcePos pos;
};

const char* tok_desc(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::Number: return "number";
    case Tok::KwEventtype: return "'eventtype'";
    case Tok::KwMatches: return "'matches'";
    case Tok::KwEmpty: return "'empty'";
    case Tok::KwLet: return "'let'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwNull: return "'null'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Eq: return "'='";
    case Tok::Or: return "'\\/'";
    case Tok::And: return "'/\\'";
    case Tok::Bar: return "'|'";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct ParseFailure {
    SourcePos pos;
    std::string message;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    std::vector<Token> run(std::vector<ParseFailure>& errors) {
        std::vector<Token> out;
        while (true) {
            skip_space();
            SourcePos p{line_, col_};
            if (i_ >= s_.size()) {
                out.push_back({Tok::End, "", {}, p});
                return out;
            }
            try {
                out.push_back(next(p));
            } catch (const ParseFailure& f) {
                errors.push_back(f);
                advance();
            }
        }
    }

private:
    char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

    void advance() {
        if (i_ >= s_.size())
            return;
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) {
            ++col_;
        }
        ++i_;
    }

    void skip_space() {
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (i_ < s_.size() && s_[i_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    static bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
    static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

    Token next(SourcePos p) {
        char c = peek();
        if (ident_start(c)) {
            std::string id;
            while (ident_char(peek())) {
                id.push_back(peek());
                advance();
            }
            static const std::map<std::string, Tok> kw = {
                {"eventtype", Tok::KwEventtype}, {"matches", Tok::KwMatches}, {"empty", Tok::KwEmpty},
                {"let", Tok::KwLet},             {"true", Tok::KwTrue},       {"false", Tok::KwFalse},
                {"null", Tok::KwNull}};
            auto it = kw.find(id);
            return {it == kw.end() ? Tok::Ident : it->second, id, {}, p};
        }
        if (c == '"')
            return string_token(p);
        if (c == '-' || (c >= '0' && c <= '9'))
            return number_token(p);
        auto single = [&](Tok t) {
            std::string txt(1, c);
            advance();
            return Token{t, txt, {}, p};
        };
        switch (c) {
        case '(': return single(Tok::LParen);
        case ')': return single(Tok::RParen);
        case '{': return single(Tok::LBrace);
        case '}': return single(Tok::RBrace);
        case '[': return single(Tok::LBracket);
        case ']': return single(Tok::RBracket);
        case ',': return single(Tok::Comma);
        case ':': return single(Tok::Colon);
        case ';': return single(Tok::Semi);
        case '=': return single(Tok::Eq);
        case '|': return single(Tok::Bar);
        case '\\':
            if (peek(1) == '/') {
                advance();
                advance();
                return {Tok::Or, "\\/", {}, p};
            }
            break;
        case '/':
            if (peek(1) == '\\') {
                advance();
                advance();
                return {Tok::And, "/\\", {}, p};
            }
            break;
        default: break;
        }
        throw ParseFailure{p, std::string("unexpected character '") + c + "'"};
    }

    static void put_utf8(std::string& out, unsigned cp) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }

    unsigned hex4(SourcePos p) {
        unsigned v = 0;
        for (int k = 0; k < 4; ++k) {
            char h = peek();
            int d = (h >= '0' && h <= '9') ? h - '0'
                    : (h >= 'a' && h <= 'f') ? h - 'a' + 10
                    : (h >= 'A' && h <= 'F') ? h - 'A' + 10
                                             : -1;
            if (d < 0)
                throw ParseFailure{p, "invalid \\u escape"};
            v = v * 16 + static_cast<unsigned>(d);
            advance();
        }
        return v;
    }

    Token string_token(SourcePos p) {
        advance(); // opening quote
        std::string out;
        while (true) {
            if (i_ >= s_.size() || peek() == '\n')
                throw ParseFailure{p, "unterminated string"};
            char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (static_cast<unsigned char>(c) < 0x20)
                throw ParseFailure{SourcePos{line_, col_}, "control character in string"};
            if (c != '\\') {
                out.push_back(c);
                advance();
                continue;
            }
            advance();
            char e = peek();
            advance();
            switch (e) {
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case '/': out.push_back('/'); break;
            case 'b': out.push_back('\b'); break;
            case 'f': out.push_back('\f'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 't': out.push_back('\t'); break;
            case 'u': {
                unsigned cp = hex4(p);
                if (cp >= 0xD800 && cp < 0xDC00 && peek() == '\\' && peek(1) == 'u') {
                    advance();
                    advance();
                    unsigned lo = hex4(p);
                    if (lo >= 0xDC00 && lo < 0xE000)
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                    else
                        throw ParseFailure{p, "invalid surrogate pair"};
                }
                put_utf8(out, cp);
                break;
            }
            default: throw ParseFailure{p, std::string("invalid escape '\\") + e + "'"};
            }
        }
        return {Tok::String, out, Value(out), p};
    }

    Token number_token(SourcePos p) {
        std::size_t start = i_;
        bool is_float = false;
        if (peek() == '-')
            advance();
        if (!(peek() >= '0' && peek() <= '9'))
            throw ParseFailure{p, "malformed number"};
        if (peek() == '0') {
            advance();
        } else {
            while (peek() >= '0' && peek() <= '9')
                advance();
        }
        if (peek() == '.') {
            is_float = true;
            advance();
            if (!(peek() >= '0' && peek() <= '9'))
                throw ParseFailure{p, "malformed number"};
            while (peek() >= '0' && peek() <= '9')
                advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            is_float = true;
            advance();
            if (peek() == '+' || peek() == '-')
                advance();
            if (!(peek() >= '0' && peek() <= '9'))
                throw ParseFailure{p, "malformed number"};
            while (peek() >= '0' && peek() <= '9')
                advance();
        }
        std::string txt = s_.substr(start, i_ - start);
        Value v;
        if (!is_float) {
            errno = 0;
            long long n = std::strtoll(txt.c_str(), nullptr, 10);
            if (errno == ERANGE)
                v = Value(std::strtod(txt.c_str(), nullptr));
            else
                v = Value(static_cast<std::int64_t>(n));
        } else {
            v = Value(std::strtod(txt.c_str(), nullptr));
        }
        return {Tok::Number, txt, v, p};
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct RawDecl {
    EventTypeDecl decl;
    SourcePos pos;
};

struct RawEquation {
    std::string name;
    TermExprPtr body;
    SourcePos pos;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    void run(std::vector<RawDecl>& decls, std::vector<RawEquation>& eqs, std::vector<ParseFailure>& errors) {
        while (cur().kind != Tok::End) {
            try {
                if (cur().kind == Tok::KwEventtype)
                    decls.push_back(eventtype());
                else
                    eqs.push_back(equation());
            } catch (const ParseFailure& f) {
                errors.push_back(f);
                // Resynchronize after the next ';'.
                while (cur().kind != Tok::End && cur().kind != Tok::Semi)
                    ++k_;
                if (cur().kind == Tok::Semi)
                    ++k_;
            }
        }
    }

private:
    const Token& cur() const { return t_[k_]; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& c = cur();
        std::string got = c.kind == Tok::End ? "end of input" : "'" + c.text + "'";
        throw ParseFailure{c.pos, "expected " + what + ", found " + got};
    }

    const Token& expect(Tok k) {
        if (cur().kind != k)
            fail(tok_desc(k));
        return t_[k_++];
    }

    bool accept(Tok k) {
        if (cur().kind != k)
            return false;
        ++k_;
        return true;
    }

    RawDecl eventtype() {
        SourcePos p = expect(Tok::KwEventtype).pos;
        RawDecl d;
        d.pos = p;
        d.decl.type_name = expect(Tok::Ident).text;
        expect(Tok::LParen);
        if (cur().kind != Tok::RParen) {
            do {
                d.decl.params.push_back(expect(Tok::Ident).text);
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen);
        expect(Tok::KwMatches);
        if (cur().kind != Tok::LBrace)
            fail("object template");
        d.decl.templ = data_expr();
        expect(Tok::Semi);
        return d;
    }

    RawEquation equation() {
        if (cur().kind != Tok::Ident)
            fail("'eventtype' or equation name");
        RawEquation e;
        e.pos = cur().pos;
        e.name = t_[k_++].text;
        expect(Tok::Eq);
        e.body = term();
        expect(Tok::Semi);
        return e;
    }

    static bool is_key(Tok k) {
        switch (k) {
        case Tok::Ident:
        case Tok::String:
        case Tok::KwEventtype:
        case Tok::KwMatches:
        case Tok::KwEmpty:
        case Tok::KwLet:
        case Tok::KwTrue:
        case Tok::KwFalse:
        case Tok::KwNull: return true;
        default: return false;
        }
    }

    DataExpr data_expr() {
        const Token& c = cur();
        switch (c.kind) {
        case Tok::Ident: ++k_; return DataExpr::var(c.text);
        case Tok::String:
        case Tok::Number: ++k_; return DataExpr::literal(c.value);
        case Tok::KwTrue: ++k_; return DataExpr::literal(Value(true));
        case Tok::KwFalse: ++k_; return DataExpr::literal(Value(false));
        case Tok::KwNull: ++k_; return DataExpr::literal(Value());
        case Tok::LBracket: {
            ++k_;
            std::vector<DataExpr> items;
            if (cur().kind != Tok::RBracket) {
                do {
                    items.push_back(data_expr());
                } while (accept(Tok::Comma));
            }
            expect(Tok::RBracket);
            return DataExpr::array(std::move(items));
        }
        case Tok::LBrace: {
            SourcePos open = c.pos;
            ++k_;
            std::vector<DataExpr::Member> members;
            std::set<std::string> seen;
            if (cur().kind != Tok::RBrace) {
                do {
                    if (!is_key(cur().kind))
                        fail("object key");
                    const Token& key = t_[k_++];
                    if (!seen.insert(key.text).second)
                        throw ParseFailure{key.pos, "duplicate object key '" + key.text + "'"};
                    expect(Tok::Colon);
                    members.emplace_back(key.text, data_expr());
                } while (accept(Tok::Comma));
            }
            expect(Tok::RBrace);
            (void)open;
            return DataExpr::object(std::move(members));
        }
        default: fail("data expression");
        }
    }

    TermExprPtr term() { return union_(); }

    TermExprPtr union_() {
        TermExprPtr l = inter();
        while (cur().kind == Tok::Or) {
            SourcePos p = t_[k_++].pos;
            l = TermExpr::binary(TermExpr::Kind::Or, l, inter(), p);
        }
        return l;
    }

    TermExprPtr inter() {
        TermExprPtr l = shuf();
        while (cur().kind == Tok::And) {
            SourcePos p = t_[k_++].pos;
            l = TermExpr::binary(TermExpr::Kind::And, l, shuf(), p);
        }
        return l;
    }

    TermExprPtr shuf() {
        TermExprPtr l = cat();
        while (cur().kind == Tok::Bar) {
            SourcePos p = t_[k_++].pos;
            l = TermExpr::binary(TermExpr::Kind::Shuffle, l, cat(), p);
        }
        return l;
    }

    bool atom_start() const {
        switch (cur().kind) {
        case Tok::KwEmpty:
        case Tok::Ident:
        case Tok::LParen:
        case Tok::LBrace: return true;
        default: return false;
        }
    }

    TermExprPtr cat() {
        if (!atom_start())
            fail("term");
        TermExprPtr l = atom();
        while (atom_start()) {
            SourcePos p = cur().pos;
            l = TermExpr::binary(TermExpr::Kind::Cat, l, atom(), p);
        }
        return l;
    }

    TermExprPtr atom() {
        const Token& c = cur();
        switch (c.kind) {
        case Tok::KwEmpty: ++k_; return TermExpr::empty(c.pos);
        case Tok::Ident: {
            ++k_;
            if (cur().kind != Tok::LParen)
                return TermExpr::ref(c.text, c.pos);
            ++k_;
            EventPattern pat{c.text, {}};
            if (cur().kind != Tok::RParen) {
                do {
                    pat.args.push_back(data_expr());
                } while (accept(Tok::Comma));
            }
            expect(Tok::RParen);
            return TermExpr::pat(std::move(pat), c.pos);
        }
        case Tok::LParen: {
            ++k_;
            TermExprPtr t = term();
            expect(Tok::RParen);
            return t;
        }
        case Tok::LBrace: {
            SourcePos p = c.pos;
            ++k_;
            expect(Tok::KwLet);
            std::string x = expect(Tok::Ident).text;
            expect(Tok::Semi);
            TermExprPtr body = term();
            expect(Tok::RBrace);
            return TermExpr::let(std::move(x), std::move(body), p);
        }
        default: fail("term");
        }
    }

    std::vector<Token> t_;
    std::size_t k_ = 0;
};

void check_refs(const TermExprPtr& e, const std::set<std::string>& eqs, const EventTypes& types,
                const std::set<std::string>& bad_types, std::vector<ParseFailure>& errors) {
    switch (e->kind) {
    case TermExpr::Kind::Empty: return;
    case TermExpr::Kind::Name:
        if (!eqs.count(e->name))
            errors.push_back({e->pos, "undefined equation '" + e->name + "'"});
        return;
    case TermExpr::Kind::Pattern: {
        const EventTypeDecl* d = types.find(e->pattern.type_name);
        if (!d) {
            if (!bad_types.count(e->pattern.type_name))
                errors.push_back({e->pos, "undeclared event type '" + e->pattern.type_name + "'"});
        } else if (d->params.size() != e->pattern.args.size()) {
            errors.push_back({e->pos, "event type '" + d->type_name + "' expects " +
                                          std::to_string(d->params.size()) + " argument(s), got " +
                                          std::to_string(e->pattern.args.size())});
        }
        return;
    }
    case TermExpr::Kind::Let: check_refs(e->a, eqs, types, bad_types, errors); return;
    default:
        check_refs(e->a, eqs, types, bad_types, errors);
        check_refs(e->b, eqs, types, bad_types, errors);
    }
}

} // namespace

ParsedSpec parse_spec(const std::string& text, const std::string& origin) {
    std::vector<ParseFailure> errors;
    std::vector<Token> toks = Lexer(text).run(errors);
    std::vector<RawDecl> decls;
    std::vector<RawEquation> eqs;
    Parser(std::move(toks)).run(decls, eqs, errors);

    ParsedSpec spec;
    std::set<std::string> bad_types;
    for (auto& d : decls) {
        if (spec.types.find(d.decl.type_name)) {
            errors.push_back({d.pos, "event type '" + d.decl.type_name + "' declared twice"});
            continue;
        }
        try {
            spec.types.declare(d.decl);
        } catch (const std::invalid_argument& ex) {
            errors.push_back({d.pos, ex.what()});
            bad_types.insert(d.decl.type_name);
        }
    }
    std::set<std::string> names;
    for (auto& e : eqs) {
        if (!names.insert(e.name).second) {
            errors.push_back({e.pos, "equation '" + e.name + "' defined twice"});
            continue;
        }
        spec.equations.emplace_back(e.name, e.body);
    }
    for (auto& [n, body] : spec.equations)
        check_refs(body, names, spec.types, bad_types, errors);
    if (spec.equations.empty() && errors.empty())
        errors.push_back({SourcePos{1, 1}, "specification defines no equation"});

    if (!errors.empty()) {
        std::vector<Diagnostic> diags;
        for (const auto& f : errors)
            diags.push_back({origin, std::max(f.pos.line, 1), std::max(f.pos.column, 1), f.message});
        std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return a.line != b.line ? a.line < b.line : a.column < b.column;
        });
        throw SpecParseError(std::move(diags));
    }

    SystemBuilder b;
    for (const auto& [n, body] : spec.equations)
        b.add(n, body);
    spec.main = names.count("Main") ? "Main" : spec.equations.front().first;
    spec.system = b.build(spec.main);
    return spec;
}

namespace {

int syntax_level(TermExpr::Kind k) {
    switch (k) {
    case TermExpr::Kind::Or: return 1;
    case TermExpr::Kind::And: return 2;
    case TermExpr::Kind::Shuffle: return 3;
    case TermExpr::Kind::Cat: return 4;
    default: return 5;
    }
}

void pretty_into(const TermExprPtr& t, std::string& out) {
    using K = TermExpr::Kind;
    switch (t->kind) {
    case K::Empty: out += "empty"; return;
    case K::Pattern: out += t->pattern.render(); return;
    case K::Name: out += t->name; return;
    case K::Let:
        out += "{let " + t->name + "; ";
        pretty_into(t->a, out);
        out += "}";
        return;
    default: break;
    }
    const int lv = syntax_level(t->kind);
    const bool pr = syntax_level(t->b->kind) <= lv;
    std::string right;
    pretty_into(t->b, right);
    if (pr)
        right = "(" + right + ")";
    std::string left;
    pretty_into(t->a, left);
    // `Name (` would read back as a pattern
    bool pl = syntax_level(t->a->kind) < lv;
    if (!pl && t->kind == K::Cat && right.front() == '(') {
        std::size_t i = left.size();
        while (i > 0 && (std::isalnum(static_cast<unsigned char>(left[i - 1])) || left[i - 1] == '_'))
            --i;
        pl = i < left.size() && left.substr(i) != "empty";
    }
    out += pl ? "(" + left + ")" : left;
    switch (t->kind) {
    case K::Or: out += " \\/ "; break;
    case K::And: out += " /\\ "; break;
    case K::Shuffle: out += " | "; break;
    default: out += " "; break;
    }
    out += right;
}

} // namespace

std::string pretty_term(const TermExprPtr& t) {
    std::string out;
    pretty_into(t, out);
    return out;
}

std::string pretty(const ParsedSpec& spec) {
    std::string out;
    for (const auto& d : spec.types.decls()) {
        out += "eventtype " + d.type_name + "(";
        for (std::size_t i = 0; i < d.params.size(); ++i) {
            if (i)
                out += ", ";
            out += d.params[i];
        }
        out += ") matches " + d.templ.render() + ";\n";
    }
    if (!spec.types.empty() && !spec.equations.empty())
        out += "\n";
    for (const auto& [n, body] : spec.equations)
        out += n + " = " + pretty_term(body) + ";\n";
    return out;
}

bool same_spec(const ParsedSpec& a, const ParsedSpec& b) {
    const auto& da = a.types.decls();
    const auto& db = b.types.decls();
    if (da.size() != db.size() || a.equations.size() != b.equations.size() || a.main != b.main)
        return false;
    for (std::size_t i = 0; i < da.size(); ++i)
        if (da[i].type_name != db[i].type_name || da[i].params != db[i].params || da[i].templ != db[i].templ)
            return false;
    for (std::size_t i = 0; i < a.equations.size(); ++i)
        if (a.equations[i].first != b.equations[i].first ||
            !same_syntax(a.equations[i].second, b.equations[i].second))
            return false;
    return true;
}

} // namespace tracecalc
