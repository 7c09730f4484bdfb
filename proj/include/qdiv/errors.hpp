#ifndef QDIV_ERRORS_HPP
#define QDIV_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdiv
{

// Base of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// invert() on a series whose coefficient at val is zero.
class zero_leading_coefficient : public error
{
public:
    using error::error;
};

// A series window [val, prec] that holds no coefficient at all.
class empty_window : public error
{
public:
    using error::error;
};

// 1/(1 - c q^0) with c = 1.
class pole_at_constant : public error
{
public:
    using error::error;
};

// Infinite sum whose term valuations never climbed above the window.
class divergent_formal_sum : public error
{
public:
    using error::error;
};

// Coefficient requested past the known precision.
class out_of_window : public error
{
public:
    using error::error;
};

// A summation index hits a vanishing denominator.
class pole_in_range : public error
{
public:
    pole_in_range(std::int64_t k, const std::string &what)
        : error(what + " (k=" + std::to_string(k) + ")"), index_(k)
    {
    }

    // Same pole, message prefixed with context such as an identity id.
    pole_in_range(const std::string &context, const pole_in_range &inner)
        : error(context + ": " + inner.what()), index_(inner.index_)
    {
    }

    std::int64_t index() const noexcept
    {
        return index_;
    }

private:
    std::int64_t index_;
};

class unknown_identity : public error
{
public:
    explicit unknown_identity(const std::string &id) : error("unknown identity '" + id + "'") {}
};

class duplicate_values : public error
{
public:
    using error::error;
};

// A rational check whose parameter x makes a factor vanish.
class pole_at_x : public error
{
public:
    using error::error;
};

} // namespace qdiv

#endif
