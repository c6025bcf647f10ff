#include "weft/parser.hpp"

#include <cctype>
#include <charconv>

namespace weft {

namespace {

struct Token {
    enum Type {
        kEnd, kName, kInteger,
        kTrue, kFalse, kPre, kSince, kOnce, kHistorically,
        kBang, kAndAnd, kOrOr, kArrow,
        kLParen, kRParen, kLBracket, kRBracket, kColon,
    };
    Type type = kEnd;
    std::string_view text;
    TimePoint value = 0; // kInteger only
    std::size_t column = 1;
};

const char* describe(Token::Type t) {
    switch (t) {
    case Token::kEnd: return "end of input";
    case Token::kName: return "name";
    case Token::kInteger: return "integer";
    case Token::kTrue: return "'true'";
    case Token::kFalse: return "'false'";
    case Token::kPre: return "'pre'";
    case Token::kSince: return "'since'";
    case Token::kOnce: return "'once'";
    case Token::kHistorically: return "'historically'";
    case Token::kBang: return "'!'";
    case Token::kAndAnd: return "'&&'";
    case Token::kOrOr: return "'||'";
    case Token::kArrow: return "'->'";
    case Token::kLParen: return "'('";
    case Token::kRParen: return "')'";
    case Token::kLBracket: return "'['";
    case Token::kRBracket: return "']'";
    case Token::kColon: return "':'";
    }
    return "?";
}

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::string_view text, PredicateTable& predicates, std::size_t line)
        : text_(text), predicates_(predicates), line_(line) {
        advance();
    }

    FormulaPtr run() {
        FormulaPtr f = parse_implies();
        if (tok_.type != Token::kEnd) fail("unexpected trailing input");
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    PredicateTable& predicates_;
    std::size_t line_;
    Token tok_;

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message + " (found " + describe(tok_.type) + ")", line_, tok_.column);
    }

    [[noreturn]] void fail_at(std::size_t column, const std::string& message) const {
        throw ParseError(message, line_, column);
    }

    void advance() { tok_ = lex(); }

    void expect(Token::Type t, const char* context) {
        if (tok_.type != t)
            fail(std::string("expected ") + describe(t) + " " + context);
        advance();
    }

    Token lex() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        Token t;
        t.column = pos_ + 1;
        if (pos_ >= text_.size()) return t;

        char c = text_[pos_];
        if (name_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
            t.text = text_.substr(start, pos_ - start);
            if (t.text == "true") t.type = Token::kTrue;
            else if (t.text == "false") t.type = Token::kFalse;
            else if (t.text == "pre") t.type = Token::kPre;
            else if (t.text == "since") t.type = Token::kSince;
            else if (t.text == "once") t.type = Token::kOnce;
            else if (t.text == "historically") t.type = Token::kHistorically;
            else t.type = Token::kName;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            t.text = text_.substr(start, pos_ - start);
            auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
            if (res.ec != std::errc() || t.value == kTimeInfinity)
                fail_at(t.column, "bound value out of range");
            t.type = Token::kInteger;
            return t;
        }
        switch (c) {
        case '!': ++pos_; t.type = Token::kBang; return t;
        case '(': ++pos_; t.type = Token::kLParen; return t;
        case ')': ++pos_; t.type = Token::kRParen; return t;
        case '[': ++pos_; t.type = Token::kLBracket; return t;
        case ']': ++pos_; t.type = Token::kRBracket; return t;
        case ':': ++pos_; t.type = Token::kColon; return t;
        case '&':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '&') {
                pos_ += 2; t.type = Token::kAndAnd; return t;
            }
            fail_at(t.column, "stray '&' (use '&&')");
        case '|':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '|') {
                pos_ += 2; t.type = Token::kOrOr; return t;
            }
            fail_at(t.column, "stray '|' (use '||')");
        case '-':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                pos_ += 2; t.type = Token::kArrow; return t;
            }
            fail_at(t.column, "stray '-' (use '->')");
        default:
            fail_at(t.column, std::string("unexpected character '") + c + "'");
        }
    }

    // bound := '[' integer? ':' integer? ']', already past the '['
    TimeBound parse_bound() {
        std::size_t open_col = tok_.column;
        advance(); // consume '['
        TimeBound b;
        if (tok_.type == Token::kInteger) {
            b.lower = tok_.value;
            advance();
        }
        expect(Token::kColon, "in bound");
        if (tok_.type == Token::kInteger) {
            b.upper = tok_.value;
            advance();
        }
        expect(Token::kRBracket, "to close bound");
        if (b.upper_bounded() && b.lower > b.upper)
            fail_at(open_col, "malformed bound: lower " + std::to_string(b.lower) +
                                  " exceeds upper " + std::to_string(b.upper));
        return b;
    }

    TimeBound maybe_bound() {
        if (tok_.type == Token::kLBracket) return parse_bound();
        return {};
    }

    FormulaPtr parse_implies() {
        FormulaPtr lhs = parse_or();
        if (tok_.type == Token::kArrow) {
            advance();
            return mk_implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    FormulaPtr parse_or() {
        FormulaPtr lhs = parse_and();
        while (tok_.type == Token::kOrOr) {
            advance();
            lhs = mk_or(std::move(lhs), parse_and());
        }
        return lhs;
    }

    FormulaPtr parse_and() {
        FormulaPtr lhs = parse_since();
        while (tok_.type == Token::kAndAnd) {
            advance();
            lhs = mk_and(std::move(lhs), parse_since());
        }
        return lhs;
    }

    FormulaPtr parse_since() {
        FormulaPtr lhs = parse_unary();
        while (tok_.type == Token::kSince) {
            advance();
            TimeBound b = maybe_bound();
            lhs = mk_since(std::move(lhs), parse_unary(), b);
        }
        return lhs;
    }

    FormulaPtr parse_unary() {
        switch (tok_.type) {
        case Token::kBang:
            advance();
            return mk_not(parse_unary());
        case Token::kPre:
            advance();
            return mk_previous(parse_unary());
        case Token::kOnce: {
            advance();
            TimeBound b = maybe_bound();
            return mk_once(parse_unary(), b);
        }
        case Token::kHistorically: {
            advance();
            TimeBound b = maybe_bound();
            return mk_historically(parse_unary(), b);
        }
        default:
            return parse_primary();
        }
    }

    FormulaPtr parse_primary() {
        switch (tok_.type) {
        case Token::kName: {
            auto f = mk_atom(std::string(tok_.text));
            predicates_.intern(tok_.text);
            advance();
            return f;
        }
        case Token::kTrue:
            advance();
            return mk_true();
        case Token::kFalse:
            advance();
            return mk_false();
        case Token::kLParen: {
            advance();
            FormulaPtr f = parse_implies();
            expect(Token::kRParen, "to close group");
            return f;
        }
        default:
            fail("expected a formula");
        }
    }
};

} // namespace

FormulaPtr parse_property(std::string_view text, PredicateTable& predicates, std::size_t line) {
    Parser p(text, predicates, line);
    FormulaPtr raw = p.run();
    return normalize(*raw);
}

std::vector<SpecProperty> parse_spec_text(std::string_view text, PredicateTable& predicates) {
    std::vector<SpecProperty> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] != '#')
            out.push_back({parse_property(line, predicates, line_no), line_no});

        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

} // namespace weft
