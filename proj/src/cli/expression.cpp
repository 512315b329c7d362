#include "motinf/cli.hpp"
#include "motinf/error.hpp"

#include <cctype>

namespace motinf::cli {

namespace {

class Parser {
public:
    Parser(const std::string& text, const gw::Field& field) : text_(text), field_(field) {}

    gw::GwElement parse() {
        gw::GwElement x = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return x;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::Parse, "expression parse error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool at_digit() {
        skip();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    Integer integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return Integer(text_.substr(start, pos_ - start));
    }

    gw::GwElement expr() {
        gw::GwElement x = term();
        for (;;) {
            if (accept('+')) {
                x += term();
            } else if (accept('-')) {
                x -= term();
            } else {
                return x;
            }
        }
    }

    gw::GwElement term() {
        gw::GwElement x = factor();
        while (accept('*')) x *= factor();
        return x;
    }

    bool starts_atom() {
        skip();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return c == '<' || c == '(' || c == 'H' || c == 'n';
    }

    gw::GwElement factor() {
        if (accept('-')) return -factor();
        if (at_digit()) {
            const Integer n = integer();
            gw::GwElement x = gw::GwElement::one(field_).times(n);
            if (starts_atom()) x *= atom();
            return x;
        }
        return atom();
    }

    gw::GwElement atom() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (accept('(')) {
            gw::GwElement x = expr();
            expect(')');
            return x;
        }
        if (accept('<')) return square_class();
        if (text_.compare(pos_, 1, "H") == 0) {
            ++pos_;
            return gw::hyperbolic(field_);
        }
        if (text_.compare(pos_, 5, "n_eps") == 0) {
            pos_ += 5;
            expect('(');
            const Integer k = integer();
            if (k > 1000000) fail("n_eps argument too large");
            expect(')');
            return gw::n_epsilon(static_cast<std::int64_t>(k), field_);
        }
        fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }

    gw::GwElement square_class() {
        skip();
        const std::size_t start = pos_;
        gw::GwElement x(field_);
        if (accept('u')) {
            if (field_.kind() == gw::Field::Kind::QuadraticallyClosed) {
                pos_ = start;
                fail("<u> needs a nonsquare, and every element is a square over " + field_.to_string());
            }
            x = gw::GwElement::from_class(gw::SquareClass::nontrivial(field_));
        } else {
            const bool negative = accept('-');
            const Integer a = integer();
            if (a == 0) {
                pos_ = start;
                fail("<0> is not a form");
            }
            const auto p = field_.kind() == gw::Field::Kind::Finite ? Integer(field_.characteristic()) : Integer(0);
            const Integer reduced = p == 0 ? a : Integer(a % p);
            if (p != 0 && reduced == 0) {
                pos_ = start;
                fail("<" + a.str() + "> vanishes in characteristic " + p.str());
            }
            const std::int64_t small = p != 0 ? static_cast<std::int64_t>(reduced) : (reduced > 0 ? 1 : -1);
            x = gw::GwElement::from_class(gw::SquareClass::of_integer(field_, negative ? -small : small));
        }
        expect('>');
        return x;
    }

    const std::string& text_;
    gw::Field field_;
    std::size_t pos_ = 0;
};

}  // namespace

gw::GwElement parse_gw_expression(const std::string& text, const gw::Field& field) {
    return Parser(text, field).parse();
}

}  // namespace motinf::cli
