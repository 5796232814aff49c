#pragma once

#include <stdexcept>
#include <string>

#include "vvmf/cyclotomic.hpp"
#include "vvmf/fqm.hpp"

namespace vvmf::cli {

enum class ValueMode { exact, floating };

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact: the canonical "coefficients @conductor" string. Floating: "re+imi" with the given digits.
std::string format_value(const Cyclotomic& x, ValueMode mode = ValueMode::exact, int precision = 6);

// {"gram": [[int]]}; throws input_error on malformed input.
IntMatrix parse_gram(const std::string& json_text);
IntMatrix read_gram_file(const std::string& path);

}  // namespace vvmf::cli
