// SPDX-License-Identifier: Apache-2.0
#include "graphforge/edge_io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

namespace graphforge {

namespace {

constexpr char kMagic[4] = {'G', 'F', 'G', '1'};

void put_u64(std::ostream& out, std::uint64_t x) {
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& in) {
    std::array<char, 8> b;
    in.read(b.data(), 8);
    if (!in) throw InvalidInputError("edge list: truncated binary input");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i)
        x |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return x;
}

}  // namespace

void write_edge_list(std::ostream& out, const Graph& g, EdgeFormat format) {
    if (format == EdgeFormat::kBinary) {
        if (g.weighted())
            throw InvalidInputError("edge list: binary format is unweighted");
        out.write(kMagic, 4);
        put_u64(out, g.n);
        out.put(g.directed ? 1 : 0);
        for (const Edge& e : g.edges) {
            put_u64(out, e.u);
            put_u64(out, e.v);
        }
        return;
    }
    out << "# n=" << g.n << " directed=" << (g.directed ? 1 : 0) << "\n";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out << g.edges[i].u << ' ' << g.edges[i].v;
        if (g.weighted()) out << ' ' << g.weights[i];
        out << '\n';
    }
}

Graph read_edge_list(std::istream& in, EdgeFormat format) {
    Graph g;
    if (format == EdgeFormat::kBinary) {
        char magic[4];
        in.read(magic, 4);
        if (!in || std::memcmp(magic, kMagic, 4) != 0)
            throw InvalidInputError("edge list: bad magic");
        g.n = get_u64(in);
        const int flag = in.get();
        if (flag != 0 && flag != 1) throw InvalidInputError("edge list: bad directed flag");
        g.directed = flag == 1;
        for (;;) {
            char b[16];
            in.read(b, 16);
            if (in.gcount() == 0) break;
            if (in.gcount() != 16) throw InvalidInputError("edge list: truncated edge record");
            std::uint64_t u = 0, v = 0;
            for (int i = 0; i < 8; ++i) {
                u |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
                v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[8 + i])) << (8 * i);
            }
            g.edges.push_back({u, v});
        }
        return g;
    }

    bool have_n = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::uint64_t n = 0;
            int directed = 0;
            if (std::sscanf(line.c_str(), "# n=%llu directed=%d",
                            reinterpret_cast<unsigned long long*>(&n), &directed) >= 1) {
                g.n = n;
                g.directed = directed == 1;
                have_n = true;
            }
            continue;
        }
        std::uint64_t u, v, w;
        std::istringstream ls(line);
        if (!(ls >> u >> v)) throw InvalidInputError("edge list: malformed line: " + line);
        g.edges.push_back({u, v});
        if (ls >> w) g.weights.push_back(w);
    }
    if (!g.weights.empty() && g.weights.size() != g.edges.size())
        throw InvalidInputError("edge list: inconsistent weight column");
    if (!have_n) {
        for (const Edge& e : g.edges) g.n = std::max({g.n, e.u + 1, e.v + 1});
    }
    return g;
}

void write_edge_list_file(const std::string& path, const Graph& g, EdgeFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot open for writing: " + path);
    write_edge_list(out, g, format);
    if (!out) throw InvalidInputError("write failed: " + path);
}

Graph read_edge_list_file(const std::string& path, EdgeFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open for reading: " + path);
    return read_edge_list(in, format);
}

Graph read_edge_list_auto(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open for reading: " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    in.clear();
    in.seekg(0);
    const EdgeFormat fmt = std::memcmp(magic, kMagic, 4) == 0 ? EdgeFormat::kBinary
                                                              : EdgeFormat::kText;
    return read_edge_list(in, fmt);
}

}  // namespace graphforge
