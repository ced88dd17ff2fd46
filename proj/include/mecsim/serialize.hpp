#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace mecsim::io {

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

template <typename T>
void write_vec(std::ostream& os, const std::vector<T>& v) {
    static_assert(std::is_trivially_copyable_v<T>);
    write_pod(os, static_cast<std::uint64_t>(v.size()));
    if (!v.empty()) os.write(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(T));
}

template <typename T>
void read_vec(std::istream& is, std::vector<T>& v) {
    std::uint64_t n = 0;
    read_pod(is, n);
    v.resize(n);
    if (n) is.read(reinterpret_cast<char*>(v.data()), n * sizeof(T));
}

template <typename T>
void write_vec2(std::ostream& os, const std::vector<std::vector<T>>& v) {
    write_pod(os, static_cast<std::uint64_t>(v.size()));
    for (const auto& row : v) write_vec(os, row);
}

template <typename T>
void read_vec2(std::istream& is, std::vector<std::vector<T>>& v) {
    std::uint64_t n = 0;
    read_pod(is, n);
    v.resize(n);
    for (auto& row : v) read_vec(is, row);
}

inline void write_string(std::ostream& os, const std::string& s) {
    write_pod(os, static_cast<std::uint64_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline void read_string(std::istream& is, std::string& s) {
    std::uint64_t n = 0;
    read_pod(is, n);
    s.resize(n);
    if (n) is.read(s.data(), static_cast<std::streamsize>(n));
}

}  // namespace mecsim::io
