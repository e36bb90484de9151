// SPDX-License-Identifier: Apache-2.0
#include "graphforge/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace graphforge {

Graph run_partitioned(const std::function<Graph(Partition)>& generate,
                      std::uint32_t parts, std::uint32_t threads) {
    if (parts == 0) throw InfeasibleError("run_partitioned: need at least one part");
    threads = std::max<std::uint32_t>(1, std::min(threads, parts));
    std::vector<Graph> pieces(parts);

    if (threads == 1) {
        for (std::uint32_t i = 0; i < parts; ++i) pieces[i] = generate({i, parts});
    } else {
        std::atomic<std::uint32_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto worker = [&] {
            for (;;) {
                const std::uint32_t i = next.fetch_add(1);
                if (i >= parts || failed.load()) return;
                try {
                    pieces[i] = generate({i, parts});
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::uint32_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failed.load()) std::rethrow_exception(failure);
    }

    // Ordered merge: ascending partition index, generator-native order within.
    std::size_t total_edges = 0, total_weights = 0;
    for (const Graph& p : pieces) {
        total_edges += p.edges.size();
        total_weights += p.weights.size();
    }
    Graph out = std::move(pieces[0]);
    out.edges.reserve(total_edges);
    out.weights.reserve(total_weights);
    for (std::uint32_t i = 1; i < parts; ++i) {
        out.edges.insert(out.edges.end(), pieces[i].edges.begin(), pieces[i].edges.end());
        out.weights.insert(out.weights.end(), pieces[i].weights.begin(),
                           pieces[i].weights.end());
        pieces[i] = Graph{};  // release as we go; the output dominates memory
    }
    return out;
}

}  // namespace graphforge
