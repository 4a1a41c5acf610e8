#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "amitsur/io.hpp"

using namespace amitsur;

int main(int argc, char** argv) {
    CLI::App app{"Amitsur cohomology, twisted corings and their dual algebras over finite commutative rings"};
    std::string job, format = "text", out;
    std::uint64_t cap = std::uint64_t(1) << 20;
    unsigned jobs = 1;
    app.add_option("job", job, "Definition file (extension plus a command object)")->required();
    app.add_option("--cap", cap, "Largest ring an enumeration may sweep, in elements")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--jobs", jobs, "Enumeration workers; output does not depend on it")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--out", out, "Write the report here instead of stdout");
    app.set_version_flag("--version", std::string(io::kToolName) + " " + io::kToolVersion);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? io::kOk : io::kInputError;
    }

    Limits limits;
    limits.element_cap = cap;
    limits.jobs = jobs;
    try {
        const io::JobSpec spec = io::parse_job_file(job, limits);
        const io::Report report = io::run_job(spec);
        const std::string text = io::emit_report(report, format == "json" ? io::Format::json : io::Format::text);
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!(f << text)) {
                std::cerr << "error: cannot write " << out << '\n';
                return io::kInputError;
            }
        }
        return report.exit_code;
    } catch (const io::JobError& e) {
        std::cerr << job;
        if (e.line()) std::cerr << ':' << e.line() << ':' << e.column();
        std::cerr << ": error";
        if (!e.pointer().empty()) std::cerr << " at " << e.pointer();
        std::cerr << ": " << e.what() << '\n';
        return io::kInputError;
    } catch (const std::exception& e) {
        const int code = io::exit_code_of(e);
        static const char* what[] = {"", "check failed", "invalid input", "resource cap exceeded"};
        std::cerr << "error: " << what[code] << ": " << e.what() << '\n';
        return code;
    }
}
