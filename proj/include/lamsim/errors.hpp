// errors.hpp — Error taxonomy shared by all modules

#pragma once

#include <stdexcept>
#include <string>

namespace lamsim {

// Every failure carries a short machine-readable kind (e.g. "Singular",
// "NotNested") plus a human-readable message. The CLI maps kinds to exit
// codes: config kinds -> 2, everything else -> 3.
class SimError : public std::runtime_error {
public:
    SimError(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

    static bool is_config_kind(const std::string& kind) {
        return kind == "MissingKey" || kind == "TypeMismatch" ||
               kind == "UnknownKey" || kind == "ConfigParse" ||
               kind == "InvalidParams";
    }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw SimError(kind, message);
}

}  // namespace lamsim
