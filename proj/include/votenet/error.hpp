#pragma once

#include <stdexcept>
#include <string>

namespace votenet {

// Malformed input, schema violations, bad parameters. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A filter left fewer than two documents. The CLI maps this to exit code 3.
class InsufficientDocuments : public InputError {
public:
    explicit InsufficientDocuments(const std::string& detail)
        : InputError("insufficient documents: " + detail) {}
};

}  // namespace votenet
