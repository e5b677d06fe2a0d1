#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace hdhash {

/// Opaque, non-empty server identifier.
class ServerId {
public:
    explicit ServerId(std::string bytes);

    const std::string& bytes() const noexcept { return bytes_; }

    friend auto operator<=>(const ServerId&, const ServerId&) = default;
    friend bool operator==(const ServerId&, const ServerId&) = default;

private:
    std::string bytes_;
};

/// Opaque, non-empty request key.
class RequestId {
public:
    explicit RequestId(std::string bytes);

    const std::string& bytes() const noexcept { return bytes_; }

    friend auto operator<=>(const RequestId&, const RequestId&) = default;
    friend bool operator==(const RequestId&, const RequestId&) = default;

private:
    std::string bytes_;
};

} // namespace hdhash
