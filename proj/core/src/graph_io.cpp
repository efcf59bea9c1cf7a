#include "lfrgen/io/graph_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace lfrgen {

namespace {

constexpr char kGraphMagic[4] = {'E', 'M', 'G', 'R'};
constexpr char kDegreeMagic[4] = {'E', 'M', 'D', 'S'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::ostream& out, std::uint16_t x) {
    const std::array<char, 2> b{static_cast<char>(x & 0xff),
                                static_cast<char>((x >> 8) & 0xff)};
    out.write(b.data(), b.size());
}

void put_u64(std::ostream& out, std::uint64_t x) {
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    out.write(b.data(), b.size());
}

std::uint16_t get_u16(std::istream& in) {
    std::array<unsigned char, 2> b;
    in.read(reinterpret_cast<char*>(b.data()), b.size());
    if (!in)
        throw ValidationError("truncated binary header");
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> b;
    in.read(reinterpret_cast<char*>(b.data()), b.size());
    if (!in)
        throw ValidationError("truncated binary payload");
    std::uint64_t x = 0;
    for (int i = 7; i >= 0; --i)
        x = (x << 8) | b[i];
    return x;
}

void check_magic(std::istream& in, const char (&magic)[4]) {
    char got[4];
    in.read(got, 4);
    if (!in || !std::equal(got, got + 4, magic))
        throw ValidationError("bad magic bytes");
}

} // namespace

void write_graph(std::ostream& out, const EdgeList& edges, node_id n, FileFormat format) {
    if (format == FileFormat::binary) {
        out.write(kGraphMagic, 4);
        put_u16(out, kVersion);
        put_u64(out, n);
        put_u64(out, edges.size());
        for (const auto& e : edges) {
            put_u64(out, e.u);
            put_u64(out, e.v);
        }
    } else {
        for (const auto& e : edges)
            out << e.u << '\t' << e.v << '\n';
    }
    if (!out)
        throw std::runtime_error("graph write failed");
}

void write_graph(const std::filesystem::path& path, const EdgeList& edges, node_id n,
                 FileFormat format) {
    std::ofstream out(path, format == FileFormat::binary
                                ? std::ios::binary | std::ios::trunc
                                : std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    write_graph(out, edges, n, format);
}

GraphFile read_graph(std::istream& in, FileFormat format) {
    GraphFile file;
    if (format == FileFormat::binary) {
        check_magic(in, kGraphMagic);
        if (get_u16(in) != kVersion)
            throw ValidationError("unsupported graph file version");
        file.n = get_u64(in);
        const auto m = get_u64(in);
        file.edges.reserve(static_cast<std::size_t>(m));
        for (std::uint64_t i = 0; i < m; ++i) {
            const auto u = get_u64(in);
            const auto v = get_u64(in);
            file.edges.push_back(Edge{u, v});
        }
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            std::istringstream ls(line);
            Edge e;
            if (!(ls >> e.u >> e.v))
                throw ValidationError("malformed edge line: " + line);
            file.edges.push_back(e);
        }
        file.n = node_count(file.edges);
    }
    for (std::size_t i = 0; i < file.edges.size(); ++i) {
        if (file.edges[i].u > file.edges[i].v)
            throw ValidationError("edge endpoints must satisfy u <= v");
        if (i > 0 && file.edges[i] < file.edges[i - 1])
            throw ValidationError("edges must be lexicographically sorted");
    }
    if (file.n < node_count(file.edges))
        throw ValidationError("header node count below the largest node id");
    return file;
}

GraphFile read_graph(const std::filesystem::path& path, FileFormat format) {
    std::ifstream in(path, format == FileFormat::binary ? std::ios::binary
                                                        : std::ios::in);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return read_graph(in, format);
}

void write_degrees(std::ostream& out, const DegreeSequence& degrees, FileFormat format) {
    if (format == FileFormat::binary) {
        out.write(kDegreeMagic, 4);
        put_u16(out, kVersion);
        put_u64(out, degrees.size());
        for (const auto d : degrees)
            put_u64(out, d);
    } else {
        for (const auto d : degrees)
            out << d << '\n';
    }
    if (!out)
        throw std::runtime_error("degree write failed");
}

void write_degrees(const std::filesystem::path& path, const DegreeSequence& degrees,
                   FileFormat format) {
    std::ofstream out(path, format == FileFormat::binary
                                ? std::ios::binary | std::ios::trunc
                                : std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    write_degrees(out, degrees, format);
}

DegreeSequence read_degrees(std::istream& in, FileFormat format) {
    DegreeSequence degrees;
    if (format == FileFormat::binary) {
        check_magic(in, kDegreeMagic);
        if (get_u16(in) != kVersion)
            throw ValidationError("unsupported degree file version");
        const auto n = get_u64(in);
        degrees.reserve(static_cast<std::size_t>(n));
        for (std::uint64_t i = 0; i < n; ++i)
            degrees.push_back(get_u64(in));
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            std::istringstream ls(line);
            std::uint64_t d;
            if (!(ls >> d))
                throw ValidationError("malformed degree line: " + line);
            degrees.push_back(d);
        }
    }
    return degrees;
}

DegreeSequence read_degrees(const std::filesystem::path& path, FileFormat format) {
    std::ifstream in(path, format == FileFormat::binary ? std::ios::binary
                                                        : std::ios::in);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return read_degrees(in, format);
}

void write_assignment(std::ostream& out, const CommunityAssignment& assignment) {
    for (const auto& m : assignment.memberships)
        out << m.node << '\t' << m.community << '\n';
    if (!out)
        throw std::runtime_error("assignment write failed");
}

void write_assignment(const std::filesystem::path& path,
                      const CommunityAssignment& assignment) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    write_assignment(out, assignment);
}

} // namespace lfrgen
