#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "pmod/interleave.hpp"

namespace pmod::cli {

/// Line-oriented run report with a fixed field order:
///
///   report v1
///   operation <name>
///   param <key> <value>            (every parameter, in declaration order)
///   input <path> sha256 <hex>
///   verdict <name> accepted|rejected|skipped
///   witness <name> <condition> at <x> lhs <r>x<c> [..] rhs <r>x<c> [..]
///   value <key> <value>
///   artifact <path>
///   elapsed-ms <n>
class Report {
public:
    explicit Report(std::string operation);

    void param(std::string_view key, std::string_view value);
    void input(std::string_view path, std::string_view contents);
    void verdict(std::string_view name, const Verdict& v);
    void skipped(std::string_view name, std::string_view why);
    void value(std::string_view key, std::string_view value);
    void artifact(std::string_view path);

    std::string str() const;

private:
    std::string operation_;
    std::vector<std::string> params_;
    std::vector<std::string> inputs_;
    std::vector<std::string> verdicts_;
    std::vector<std::string> values_;
    std::vector<std::string> artifacts_;
    std::chrono::steady_clock::time_point start_;
};

std::string sha256_hex(std::string_view data);

} // namespace pmod::cli
