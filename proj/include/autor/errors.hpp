#ifndef AUTOR_ERRORS_HPP
#define AUTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace autor {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SetupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace autor

#endif
