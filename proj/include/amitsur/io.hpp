#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "amitsur/extension.hpp"

namespace amitsur::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "amitsur-cli";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kCapExceeded = 3 };

// A definition-file problem, located by JSON pointer and, when the text is
// available, by 1-based line and column.
class JobError : public std::runtime_error {
public:
    JobError(std::string pointer, const std::string& message, std::size_t line = 0, std::size_t column = 0);
    const std::string& pointer() const { return pointer_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string pointer_;
    std::size_t line_, column_;
};

const std::vector<std::string>& command_names();

// {"modulus": n, "kind": "quotient", "poly": [c0, ..., 1]} or
// {"modulus": n, "kind": "product", "factors": [<ring>, ...]}.
RingPtr parse_ring(const Json& j, const std::string& pointer = "");
// {"base": <ring>, "top": <ring>, "eta": [[...]], "basis": [[...]], "name"?}
ExtPtr parse_extension(const Json& j, const std::string& pointer = "");

struct TwistRef {
    ExtPtr ext;
    std::optional<Vec> coeffs;  // absent: the trivial twist
};

struct JobSpec {
    std::string digest;  // SHA-256 of the definition file, hex
    ExtPtr ext;
    std::string command;
    Json params;         // the validated "command" object
    std::optional<Vec> twist;
    std::optional<TwistRef> other;  // compare only
    Limits limits;
};

// Throws JobError on any syntax, schema or rank problem.
JobSpec parse_job(std::string_view text, const Limits& limits = {});
JobSpec parse_job_file(const std::filesystem::path& path, const Limits& limits = {});

struct Report {
    Json body;
    int exit_code = kOk;
};
// Library exceptions propagate: InvalidInput, RingTooLarge, InternalInconsistency.
Report run_job(const JobSpec& spec);

enum class Format { text, json };
std::string emit_report(const Report& report, Format format);

std::string sha256_hex(std::string_view bytes);

// Exit status for an exception escaping parse_job or run_job.
int exit_code_of(const std::exception& e);

}  // namespace amitsur::io
