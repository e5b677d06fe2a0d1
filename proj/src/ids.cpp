#include "hdhash/ids.hpp"

#include <stdexcept>

namespace hdhash {

ServerId::ServerId(std::string bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty())
        throw std::invalid_argument("ServerId must not be empty");
}

RequestId::RequestId(std::string bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty())
        throw std::invalid_argument("RequestId must not be empty");
}

} // namespace hdhash
