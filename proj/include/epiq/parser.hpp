#pragma once

#include "epiq/formula.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace epiq {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t column, const std::string& msg)
        : std::runtime_error("column " + std::to_string(column) + ": " + msg)
        , column_(column)
        , message_(msg)
    {
    }
    [[nodiscard]] std::size_t column() const { return column_; }
    [[nodiscard]] const std::string& message() const { return message_; }

private:
    std::size_t column_;
    std::string message_;
};

/// Sorts are inferred. With a non-empty signature, variable sorts come from
/// it and unknown agents, facts and variables are errors. Without one,
/// occurrences of the same name share a sort and names whose sort is still
/// open after inference default to M.
F parse_q(const std::string& text, const Signature& sig = {});
F parse_m(const std::string& text, const Signature& sig = {});
Sequent parse_sequent(const std::string& text, const Signature& sig = {});

/// Parses several sequents with one joint sort assignment for variables.
std::vector<Sequent> parse_sequents(const std::vector<std::string>& texts, const Signature& sig = {});

} // namespace epiq
