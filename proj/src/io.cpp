#include "mtr/io.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "mtr/errors.hpp"

namespace mtr {

namespace {

// Cursor with 1-based line/column bookkeeping for error reporting.
class Scanner {
public:
    explicit Scanner(const std::string& text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    Int integer() {
        std::string digits;
        if (!done() && (peek() == '-' || peek() == '+')) {
            // mpz rejects an explicit '+'
            if (peek() == '-') digits.push_back('-');
            advance();
        }
        if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected an integer");
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits.push_back(peek());
            advance();
        }
        return Int(digits);
    }

    long line() const { return line_; }
    long col() const { return col_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    long line_ = 1;
    long col_ = 1;
};

IntMatrix from_rows(std::vector<std::vector<Int>> rows, const Scanner& sc) {
    if (rows.empty()) sc.fail("empty matrix");
    std::size_t cols = rows[0].size();
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != cols)
            sc.fail("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size())
                    + " entries, expected " + std::to_string(cols));
    if (rows.size() != cols)
        throw NonSquare("matrix is " + std::to_string(rows.size()) + "x"
                        + std::to_string(cols));
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = std::move(rows[i][j]);
    return m;
}

IntMatrix parse_nested(Scanner& sc) {
    sc.skip_space();
    if (sc.done() || sc.peek() != '[') sc.fail("expected '['");
    sc.advance();
    std::vector<std::vector<Int>> rows;
    while (true) {
        sc.skip_space();
        if (sc.done()) sc.fail("unterminated matrix");
        if (sc.peek() != '[') sc.fail("expected a '[' starting a row");
        sc.advance();
        std::vector<Int> row;
        while (true) {
            sc.skip_space();
            row.push_back(sc.integer());
            sc.skip_space();
            if (sc.done()) sc.fail("unterminated row");
            if (sc.peek() == ',') {
                sc.advance();
                continue;
            }
            if (sc.peek() == ']') {
                sc.advance();
                break;
            }
            sc.fail("expected ',' or ']'");
        }
        rows.push_back(std::move(row));
        sc.skip_space();
        if (sc.done()) sc.fail("unterminated matrix");
        if (sc.peek() == ',') {
            sc.advance();
            continue;
        }
        if (sc.peek() == ']') {
            sc.advance();
            break;
        }
        sc.fail("expected ',' or ']'");
    }
    sc.skip_space();
    if (!sc.done()) sc.fail("trailing text after matrix");
    return from_rows(std::move(rows), sc);
}

IntMatrix parse_semicolon(Scanner& sc) {
    std::vector<std::vector<Int>> rows;
    std::vector<Int> row;
    while (true) {
        sc.skip_space();
        if (sc.done()) break;
        char c = sc.peek();
        if (c == ';') {
            if (row.empty()) sc.fail("empty row");
            rows.push_back(std::move(row));
            row.clear();
            sc.advance();
            continue;
        }
        if (c != '-' && c != '+' && !std::isdigit(static_cast<unsigned char>(c)))
            sc.fail(std::string("unexpected character '") + c + "'");
        row.push_back(sc.integer());
    }
    // a trailing ';' leaves an empty final row; tolerate it
    if (!row.empty()) rows.push_back(std::move(row));
    return from_rows(std::move(rows), sc);
}

} // namespace

IntMatrix parse_matrix(const std::string& text) {
    Scanner sc(text);
    sc.skip_space();
    if (sc.done()) sc.fail("empty matrix");
    if (sc.peek() == '[') return parse_nested(sc);
    return parse_semicolon(sc);
}

std::string emit_matrix(const IntMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += m.at(i, j).get_str();
        }
    }
    return out;
}

std::string emit_matrix_nested(const IntMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ',';
        out += '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += m.at(i, j).get_str();
        }
        out += ']';
    }
    out += ']';
    return out;
}

} // namespace mtr
