#pragma once

#include <stdexcept>
#include <string>

namespace neuronav {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed environment, maze or config content.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A caller broke an operation's precondition (stepping a terminal, bad action...).
class ContractError : public Error {
public:
    using Error::Error;
};

class EncodingError : public Error {
public:
    using Error::Error;
};

class CatalogError : public Error {
public:
    using Error::Error;
};

class EditError : public Error {
public:
    using Error::Error;
};

class PolicyError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace neuronav
