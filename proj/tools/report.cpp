#include "report.hpp"

#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "pmod/error.hpp"

namespace pmod::cli {

Report::Report(std::string operation)
    : operation_(std::move(operation)), start_(std::chrono::steady_clock::now())
{
}

void Report::param(std::string_view key, std::string_view value)
{
    params_.push_back("param " + std::string(key) + " " + std::string(value));
}

void Report::input(std::string_view path, std::string_view contents)
{
    inputs_.push_back("input " + std::string(path) + " sha256 " + sha256_hex(contents));
}

void Report::verdict(std::string_view name, const Verdict& v)
{
    verdicts_.push_back("verdict " + std::string(name) + (v.accepted ? " accepted" : " rejected"));
    if (v.witness) {
        const Witness& w = *v.witness;
        std::ostringstream os;
        os << "witness " << name << " " << w.condition << " at " << w.point << " lhs " << w.lhs << " rhs " << w.rhs;
        verdicts_.push_back(os.str());
    }
}

void Report::skipped(std::string_view name, std::string_view why)
{
    verdicts_.push_back("verdict " + std::string(name) + " skipped " + std::string(why));
}

void Report::value(std::string_view key, std::string_view value)
{
    values_.push_back("value " + std::string(key) + " " + std::string(value));
}

void Report::artifact(std::string_view path)
{
    artifacts_.push_back("artifact " + std::string(path));
}

std::string Report::str() const
{
    std::ostringstream os;
    os << "report v1\n";
    os << "operation " << operation_ << "\n";
    for (const auto* group : {&params_, &inputs_, &verdicts_, &values_, &artifacts_})
        for (const auto& line : *group)
            os << line << "\n";
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
    os << "elapsed-ms " << elapsed.count() << "\n";
    return os.str();
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < length; ++i)
        os << std::setw(2) << static_cast<int>(digest[i]);
    return os.str();
}

} // namespace pmod::cli
