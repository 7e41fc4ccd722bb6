#ifndef LEMNMAP_ERROR_HPP
#define LEMNMAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lemnmap
{

// Root of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class domain_error : public error
{
public:
    using error::error;
};

// Point lies on (or numerically on) the compact set or its boundary.
class boundary_error : public domain_error
{
public:
    using domain_error::domain_error;
};

// Evaluation too close to a pole of a meromorphic function.
class pole_error : public domain_error
{
public:
    using domain_error::domain_error;
};

// Iteration failed to converge or a branch guard tripped.
class numerical_error : public error
{
public:
    using error::error;
};

// Invalid configuration detected while building a map.
class construction_error : public error
{
public:
    using error::error;
};

// A user-supplied function violates its documented contract.
class contract_error : public error
{
public:
    using error::error;
};

} // namespace lemnmap

#endif
