/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/formula.hh>
#include <johnson/errors.hh>

#include <algorithm>
#include <cctype>
#include <set>

using std::set;
using std::string;
using std::vector;

namespace johnson
{
    auto Formula::atom(const RelationSymbol & sym, vector<string> args) -> Formula
    {
        Formula f;
        f.kind = NodeKind::Atom;
        f.symbol = sym;
        f.vars = std::move(args);
        return f;
    }

    auto Formula::equal(const string & a, const string & b) -> Formula
    {
        Formula f;
        f.kind = NodeKind::Equal;
        f.vars = {a, b};
        return f;
    }

    auto Formula::conj(vector<Formula> children) -> Formula
    {
        Formula f;
        f.kind = NodeKind::And;
        f.children = std::move(children);
        return f;
    }

    auto Formula::disj(vector<Formula> children) -> Formula
    {
        Formula f;
        f.kind = NodeKind::Or;
        f.children = std::move(children);
        return f;
    }

    auto Formula::negation(Formula child) -> Formula
    {
        Formula f;
        f.kind = NodeKind::Not;
        f.children.push_back(std::move(child));
        return f;
    }

    auto Formula::exists(vector<string> bound, Formula child) -> Formula
    {
        Formula f;
        f.kind = NodeKind::Exists;
        f.vars = std::move(bound);
        f.children.push_back(std::move(child));
        return f;
    }

    auto Formula::forall(vector<string> bound, Formula child) -> Formula
    {
        Formula f;
        f.kind = NodeKind::Forall;
        f.vars = std::move(bound);
        f.children.push_back(std::move(child));
        return f;
    }

    namespace
    {
        struct Token
        {
            enum { Open, Close, Word, End } type;
            string text;
            int line, column;
        };

        class Lexer
        {
            private:
                const string & _text;
                std::size_t _pos = 0;
                int _line = 1, _column = 1;

                auto advance() -> void
                {
                    if (_text[_pos] == '\n') {
                        ++_line;
                        _column = 1;
                    }
                    else
                        ++_column;
                    ++_pos;
                }

            public:
                explicit Lexer(const string & text) : _text(text) {}

                auto next() -> Token
                {
                    while (_pos < _text.size()) {
                        if (std::isspace(static_cast<unsigned char>(_text[_pos])))
                            advance();
                        else if (_text[_pos] == ';') {
                            // comment to end of line
                            while (_pos < _text.size() && _text[_pos] != '\n')
                                advance();
                        }
                        else
                            break;
                    }
                    if (_pos >= _text.size())
                        return Token{Token::End, "", _line, _column};

                    int line = _line, column = _column;
                    if (_text[_pos] == '(') {
                        advance();
                        return Token{Token::Open, "(", line, column};
                    }
                    if (_text[_pos] == ')') {
                        advance();
                        return Token{Token::Close, ")", line, column};
                    }
                    string word;
                    while (_pos < _text.size() && ! std::isspace(static_cast<unsigned char>(_text[_pos]))
                            && _text[_pos] != '(' && _text[_pos] != ')' && _text[_pos] != ';') {
                        word += _text[_pos];
                        advance();
                    }
                    return Token{Token::Word, word, line, column};
                }
        };

        auto describe(const Token & t) -> string
        {
            switch (t.type) {
                case Token::Open: return "'('";
                case Token::Close: return "')'";
                case Token::End: return "end of input";
                case Token::Word: return "'" + t.text + "'";
            }
            return "?";
        }

        auto is_identifier(const string & s) -> bool
        {
            if (s.empty())
                return false;
            if (! std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
                return false;
            return std::all_of(s.begin(), s.end(), [] (char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
        }

        class Parser
        {
            private:
                Lexer _lexer;
                Token _current;
                const vector<RelationSymbol> & _signature;
                vector<string> _bound;

                auto shift() -> Token
                {
                    auto t = _current;
                    _current = _lexer.next();
                    return t;
                }

                [[noreturn]] auto fail(const string & message, const Token & at) -> void
                {
                    throw ParseError(message, at.line, at.column);
                }

                auto expect(decltype(Token::type) type, const string & what) -> Token
                {
                    if (_current.type != type)
                        fail("expected " + what + " but found " + describe(_current), _current);
                    return shift();
                }

                auto variable() -> string
                {
                    auto t = expect(Token::Word, "a variable");
                    if (! is_identifier(t.text))
                        fail("'" + t.text + "' is not a valid variable name", t);
                    return t.text;
                }

            public:
                Parser(const string & text, const vector<RelationSymbol> & signature) :
                    _lexer(text),
                    _current(_lexer.next()),
                    _signature(signature)
                {
                }

                auto formula() -> Formula
                {
                    auto open = expect(Token::Open, "'('");
                    auto head = expect(Token::Word, "a connective, quantifier, or relation symbol");

                    if (head.text == "and" || head.text == "or") {
                        vector<Formula> children;
                        while (_current.type == Token::Open)
                            children.push_back(formula());
                        if (children.empty())
                            fail("'" + head.text + "' needs at least one subformula", _current);
                        expect(Token::Close, "')'");
                        return head.text == "and" ? Formula::conj(std::move(children)) : Formula::disj(std::move(children));
                    }

                    if (head.text == "not") {
                        auto child = formula();
                        expect(Token::Close, "')'");
                        return Formula::negation(std::move(child));
                    }

                    if (head.text == "exists" || head.text == "forall") {
                        expect(Token::Open, "'(' starting the quantified variable list");
                        vector<string> names;
                        vector<Token> where;
                        while (_current.type == Token::Word) {
                            where.push_back(_current);
                            names.push_back(variable());
                        }
                        if (names.empty())
                            fail("empty quantified variable list", _current);
                        expect(Token::Close, "')'");
                        for (std::size_t i = 0 ; i < names.size() ; ++i) {
                            if (std::find(_bound.begin(), _bound.end(), names[i]) != _bound.end())
                                fail("variable '" + names[i] + "' is quantified twice", where[i]);
                            _bound.push_back(names[i]);
                        }
                        auto child = formula();
                        _bound.resize(_bound.size() - names.size());
                        expect(Token::Close, "')'");
                        return head.text == "exists" ? Formula::exists(std::move(names), std::move(child))
                            : Formula::forall(std::move(names), std::move(child));
                    }

                    if (head.text == "=") {
                        auto a = variable();
                        auto b = variable();
                        expect(Token::Close, "')' after the two arguments of '='");
                        return Formula::equal(a, b);
                    }

                    RelationSymbol sym;
                    try {
                        sym = RelationSymbol::parse(head.text);
                    }
                    catch (const InvalidInput &) {
                        fail("unknown relation symbol '" + head.text + "'", head);
                    }
                    if (! _signature.empty() && std::find(_signature.begin(), _signature.end(), sym) == _signature.end())
                        fail("relation symbol '" + head.text + "' is not in the signature", head);

                    vector<string> args;
                    while (_current.type == Token::Word)
                        args.push_back(variable());
                    if (static_cast<int>(args.size()) != sym.arity())
                        fail("relation " + sym.to_string() + " has arity " + std::to_string(sym.arity()) + " but is applied to "
                                + std::to_string(args.size()) + " variables", open);
                    expect(Token::Close, "')'");
                    return Formula::atom(sym, std::move(args));
                }

                auto finish() -> void
                {
                    if (_current.type != Token::End)
                        fail("unexpected " + describe(_current) + " after the formula", _current);
                }
        };

        auto print_to(const Formula & f, string & out) -> void
        {
            auto words = [&] (const vector<string> & vs) {
                for (std::size_t i = 0 ; i < vs.size() ; ++i) {
                    if (i != 0)
                        out += " ";
                    out += vs[i];
                }
            };

            out += "(";
            switch (f.kind) {
                case NodeKind::Atom:
                    out += f.symbol.to_string() + " ";
                    words(f.vars);
                    break;
                case NodeKind::Equal:
                    out += "= ";
                    words(f.vars);
                    break;
                case NodeKind::And:
                case NodeKind::Or:
                    out += f.kind == NodeKind::And ? "and" : "or";
                    for (auto & c : f.children) {
                        out += " ";
                        print_to(c, out);
                    }
                    break;
                case NodeKind::Not:
                    out += "not ";
                    print_to(f.children.at(0), out);
                    break;
                case NodeKind::Exists:
                case NodeKind::Forall:
                    out += f.kind == NodeKind::Exists ? "exists (" : "forall (";
                    words(f.vars);
                    out += ") ";
                    print_to(f.children.at(0), out);
                    break;
            }
            out += ")";
        }

        auto collect_free(const Formula & f, vector<string> & bound, vector<string> & result) -> void
        {
            switch (f.kind) {
                case NodeKind::Atom:
                case NodeKind::Equal:
                    for (auto & v : f.vars)
                        if (std::find(bound.begin(), bound.end(), v) == bound.end()
                                && std::find(result.begin(), result.end(), v) == result.end())
                            result.push_back(v);
                    break;
                case NodeKind::And:
                case NodeKind::Or:
                case NodeKind::Not:
                    for (auto & c : f.children)
                        collect_free(c, bound, result);
                    break;
                case NodeKind::Exists:
                case NodeKind::Forall:
                    bound.insert(bound.end(), f.vars.begin(), f.vars.end());
                    collect_free(f.children.at(0), bound, result);
                    bound.resize(bound.size() - f.vars.size());
                    break;
            }
        }

        auto collect_all(const Formula & f, vector<string> & result) -> void
        {
            for (auto & v : f.vars)
                if (std::find(result.begin(), result.end(), v) == result.end())
                    result.push_back(v);
            for (auto & c : f.children)
                collect_all(c, result);
        }

        auto check_node(const Formula & f, vector<string> & bound) -> void
        {
            switch (f.kind) {
                case NodeKind::Atom:
                    if (static_cast<int>(f.vars.size()) != f.symbol.arity())
                        throw InvalidInput("relation " + f.symbol.to_string() + " applied to " + std::to_string(f.vars.size()) + " variables");
                    break;
                case NodeKind::Equal:
                    if (f.vars.size() != 2)
                        throw InvalidInput("'=' needs exactly two variables");
                    break;
                case NodeKind::And:
                case NodeKind::Or:
                    if (f.children.empty())
                        throw InvalidInput("empty conjunction or disjunction");
                    for (auto & c : f.children)
                        check_node(c, bound);
                    break;
                case NodeKind::Not:
                    if (f.children.size() != 1)
                        throw InvalidInput("'not' needs exactly one subformula");
                    check_node(f.children[0], bound);
                    break;
                case NodeKind::Exists:
                case NodeKind::Forall:
                    if (f.vars.empty() || f.children.size() != 1)
                        throw InvalidInput("malformed quantifier");
                    for (auto & v : f.vars) {
                        if (std::find(bound.begin(), bound.end(), v) != bound.end())
                            throw InvalidInput("variable '" + v + "' is quantified twice");
                        bound.push_back(v);
                    }
                    check_node(f.children[0], bound);
                    bound.resize(bound.size() - f.vars.size());
                    break;
            }
        }
    }

    auto parse_formula(const string & text, const vector<RelationSymbol> & signature) -> Formula
    {
        Parser parser(text, signature);
        auto result = parser.formula();
        parser.finish();
        return result;
    }

    auto print_formula(const Formula & f) -> string
    {
        string out;
        print_to(f, out);
        return out;
    }

    auto free_vars(const Formula & f) -> vector<string>
    {
        vector<string> bound, result;
        collect_free(f, bound, result);
        return result;
    }

    auto all_vars(const Formula & f) -> vector<string>
    {
        vector<string> result;
        collect_all(f, result);
        return result;
    }

    auto is_pp(const Formula & f) -> bool
    {
        switch (f.kind) {
            case NodeKind::Atom:
            case NodeKind::Equal:
                return true;
            case NodeKind::And:
            case NodeKind::Exists:
                return std::all_of(f.children.begin(), f.children.end(), [] (const Formula & c) { return is_pp(c); });
            default:
                return false;
        }
    }

    auto quantifier_count(const Formula & f) -> int
    {
        int result = 0;
        if (f.kind == NodeKind::Exists || f.kind == NodeKind::Forall)
            result += static_cast<int>(f.vars.size());
        for (auto & c : f.children)
            result += quantifier_count(c);
        return result;
    }

    auto symbols_used(const Formula & f) -> vector<RelationSymbol>
    {
        vector<RelationSymbol> result;
        auto walk = [&] (const Formula & g, auto & self) -> void {
            if (g.kind == NodeKind::Atom && std::find(result.begin(), result.end(), g.symbol) == result.end())
                result.push_back(g.symbol);
            for (auto & c : g.children)
                self(c, self);
        };
        walk(f, walk);
        return result;
    }

    auto check_well_formed(const Formula & f) -> void
    {
        vector<string> bound;
        check_node(f, bound);
    }
}
