#ifndef PDCNET_ERRORS_HPP
#define PDCNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdcnet {

// Exit-code contract used by the CLI: 0 ok, 1 check failed, 2 bad arguments,
// 3 numeric/convergence trouble.
enum class ExitCode : int {
    ok = 0,
    check_failed = 1,
    bad_arguments = 2,
    numeric_error = 3,
};

struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

struct undefined_conditional_error : std::domain_error {
    explicit undefined_conditional_error(const std::string& what) : std::domain_error(what) {}
};

struct internal_consistency_error : std::logic_error {
    explicit internal_consistency_error(const std::string& what) : std::logic_error(what) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Floating-point verdict too close to the tolerance to trust; callers should
// retry on the exact-rational path.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pdcnet

#endif
