#pragma once

// A guessing sequence: a named rule producing the level family A_n for each
// n up to a depth bound, together with its cardinality budget pi. Levels are
// evaluated lazily and cached; evaluation is idempotent, so the shared cache
// only needs a mutex for structural safety. Every evaluated level is checked
// against the budget: |A_n| <= pi(n) where pi is defined, A_n empty where it
// is not.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "guesslab/family.hpp"
#include "guesslab/pibound.hpp"

namespace guesslab {

class GuessingSequence {
  public:
    using LevelFn = std::function<LevelFamily(std::size_t)>;

    GuessingSequence(std::string id, PiBound pi, std::size_t max_depth, LevelFn gen)
        : impl_(std::make_shared<Impl>(std::move(id), std::move(pi), max_depth, std::move(gen))) {}

    const std::string& id() const { return impl_->id; }
    const PiBound& pi() const { return impl_->pi; }
    std::size_t max_depth() const { return impl_->max_depth; }

    const LevelFamily& level(std::size_t n) const {
        if (n > impl_->max_depth)
            throw std::out_of_range("GuessingSequence: level beyond generation depth");
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->cache.find(n);
        if (it == impl_->cache.end()) {
            auto fam = std::make_unique<LevelFamily>(impl_->gen(n));
            if (fam->level() != n)
                throw std::logic_error("GuessingSequence: generator produced wrong level");
            const auto budget = impl_->pi(n);
            if (budget) {
                if (fam->cardinality() > *budget)
                    throw std::logic_error("GuessingSequence: |A_n| exceeds pi(n) at level " +
                                           std::to_string(n));
            } else if (fam->cardinality() != 0) {
                throw std::logic_error(
                    "GuessingSequence: nonempty level where pi is undefined, level " +
                    std::to_string(n));
            }
            it = impl_->cache.emplace(n, std::move(fam)).first;
        }
        return *it->second;
    }

    // Whether the length-n prefix of w lands in A_n.
    bool guesses(const BitWord& w, std::size_t n) const { return level(n).contains_prefix(w); }

  private:
    struct Impl {
        Impl(std::string id_, PiBound pi_, std::size_t depth_, LevelFn gen_)
            : id(std::move(id_)), pi(std::move(pi_)), max_depth(depth_), gen(std::move(gen_)) {}
        std::string id;
        PiBound pi;
        std::size_t max_depth;
        LevelFn gen;
        mutable std::mutex mu;
        mutable std::map<std::size_t, std::unique_ptr<LevelFamily>> cache;
    };

    std::shared_ptr<Impl> impl_;
};

}  // namespace guesslab
