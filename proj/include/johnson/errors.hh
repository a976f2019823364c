/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_ERRORS_HH
#define JOHNSON_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace johnson
{
    /// Base class for everything the workbench throws on purpose.
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// A configured limit (vertex count, search nodes, mask width) was hit.
    /// Never a verdict: callers report "skipped", not "fail".
    class BudgetExceeded : public Error
    {
        public:
            using Error::Error;
    };

    /// Malformed input: bad parameters, arity mismatch, unknown symbol.
    class InvalidInput : public Error
    {
        public:
            using Error::Error;
    };

    class ParseError : public InvalidInput
    {
        private:
            int _line, _column;

        public:
            ParseError(const std::string & message, int line, int column) :
                InvalidInput(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
                _line(line),
                _column(column)
            {
            }

            auto line() const -> int { return _line; }
            auto column() const -> int { return _column; }
    };
}

#endif
