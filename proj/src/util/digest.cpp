#include "reviewkit/util/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace reviewkit::digest {

std::string sha256_hex(const void* data, size_t size) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int md_len = 0;
    if (EVP_Digest(data, size, md.data(), &md_len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(md_len * 2);
    for (unsigned int i = 0; i < md_len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0x0f]);
    }
    return out;
}

std::string sha256_hex(std::string_view text) {
    return sha256_hex(text.data(), text.size());
}

std::string sha256_hex(const std::vector<uint8_t>& bytes) {
    return sha256_hex(bytes.data(), bytes.size());
}

} // namespace reviewkit::digest
