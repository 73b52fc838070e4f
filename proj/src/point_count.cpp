#include "motzeta/point_count.hpp"

#include "motzeta/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace motzeta {

namespace {

using Elem = FiniteField::Elem;

/// Constraint program compiled for one field.
struct Program {
    struct Occurrence {
        int mono;
        int exp;
    };
    struct Mono {
        Elem coeff;
        int cons;
        int size;     // number of variables
        int last_pos; // position of the last variable
        int last_exp;
    };
    struct ConsGroup {
        int cons;
        std::vector<int> monos; // monomials of cons whose last variable is this position
    };

    int positions = 0; // variables that occur somewhere
    int absent = 0;
    bool inconsistent = false;
    std::vector<Mono> monos;
    std::vector<std::vector<Occurrence>> occ;       // per position
    std::vector<std::vector<ConsGroup>> last_groups; // per position
    std::vector<Elem> targets;
    std::vector<int> cons_size;
};

Program compile(const JetConstraintSystem& sys, const FiniteField& F)
{
    Program prog;
    const int nv = sys.num_vars();
    std::vector<std::vector<std::pair<Elem, std::vector<std::pair<int, int>>>>> reduced(sys.levels.size());
    std::vector<char> used(static_cast<std::size_t>(nv), 0);
    for (std::size_t k = 0; k < sys.levels.size(); ++k)
        for (const auto& mono : sys.levels[k]) {
            const Elem c = F.from_integer(mono.coeff);
            if (c == 0)
                continue;
            reduced[k].emplace_back(c, mono.vars);
            for (const auto& [v, e] : mono.vars)
                used[static_cast<std::size_t>(v)] = 1;
        }
    std::vector<int> pos_of(static_cast<std::size_t>(nv), -1);
    for (int v = 0; v < nv; ++v)
        if (used[static_cast<std::size_t>(v)])
            pos_of[static_cast<std::size_t>(v)] = prog.positions++;
    prog.absent = nv - prog.positions;
    prog.occ.resize(static_cast<std::size_t>(prog.positions));
    prog.last_groups.resize(static_cast<std::size_t>(prog.positions));

    for (std::size_t k = 0; k < reduced.size(); ++k) {
        const Elem target = F.from_integer(sys.targets[k]);
        if (reduced[k].empty()) {
            if (target != 0)
                prog.inconsistent = true;
            continue;
        }
        const int cons = static_cast<int>(prog.targets.size());
        prog.targets.push_back(target);
        prog.cons_size.push_back(static_cast<int>(reduced[k].size()));
        for (const auto& [c, vars] : reduced[k]) {
            const int id = static_cast<int>(prog.monos.size());
            Program::Mono mono{c, cons, static_cast<int>(vars.size()), 0, 0};
            for (const auto& [v, e] : vars) {
                const int p = pos_of[static_cast<std::size_t>(v)];
                prog.occ[static_cast<std::size_t>(p)].push_back({id, e});
                mono.last_pos = std::max(mono.last_pos, p);
            }
            for (const auto& [v, e] : vars)
                if (pos_of[static_cast<std::size_t>(v)] == mono.last_pos)
                    mono.last_exp = e;
            prog.monos.push_back(mono);
            auto& groups = prog.last_groups[static_cast<std::size_t>(mono.last_pos)];
            if (groups.empty() || groups.back().cons != cons)
                groups.push_back({cons, {}});
            groups.back().monos.push_back(id);
        }
    }
    return prog;
}

class Search {
public:
    Search(const Program& prog, const FiniteField& F, const CountOptions& options, std::atomic<std::uint64_t>& nodes)
        : prog_(prog), F_(F), options_(options), shared_nodes_(nodes),
          tally_(static_cast<std::size_t>(prog.positions) + 1, 0)
    {
        const std::size_t nm = prog.monos.size();
        partial_.resize(nm);
        remaining_.resize(nm);
        for (std::size_t i = 0; i < nm; ++i) {
            partial_[i] = prog.monos[i].coeff;
            remaining_[i] = prog.monos[i].size;
            nonlinear_ += is_nonlinear(static_cast<int>(i));
        }
        sum_.assign(prog.targets.size(), 0);
        live_ = prog.cons_size;
    }

    /// Candidate values for the variable at position d in the current state.
    /// Returns false when the state is already contradictory.
    bool candidates(int d, std::vector<Elem>& out) const
    {
        out.clear();
        if (options_.strategy == CountStrategy::Propagate) {
            for (const auto& group : prog_.last_groups[static_cast<std::size_t>(d)]) {
                int univariate = 0;
                for (int mono : group.monos)
                    univariate += remaining_[static_cast<std::size_t>(mono)] == 1;
                if (univariate == 0 || univariate != live_[static_cast<std::size_t>(group.cons)])
                    continue;
                switch (solve_univariate(group, out)) {
                case Univariate::Solved: return true;
                case Univariate::Contradiction: return false;
                case Univariate::Trivial: break;
                }
            }
        }
        out.resize(F_.size());
        for (Elem v = 0; v < F_.size(); ++v)
            out[v] = v;
        return true;
    }

    void run(int d)
    {
        count_node();
        if (d == prog_.positions) {
            ++tally_[0];
            return;
        }
        if (options_.strategy == CountStrategy::Propagate && nonlinear_ == 0) {
            linear_finish(d);
            return;
        }
        std::vector<Elem> values;
        if (!candidates(d, values))
            return;
        for (Elem v : values)
            descend(d, v);
    }

    void descend(int d, Elem v)
    {
        const std::size_t mark = trail_.size();
        const int saved_nonlinear = nonlinear_;
        if (assign(d, v))
            run(d + 1);
        undo(mark);
        nonlinear_ = saved_nonlinear;
    }

    void flush_nodes()
    {
        shared_nodes_ += local_nodes_;
        local_nodes_ = 0;
    }

    const std::vector<std::uint64_t>& tally() const { return tally_; }
    bool linear_ready() const { return options_.strategy == CountStrategy::Propagate && nonlinear_ == 0; }

private:
    enum class Univariate { Solved, Contradiction, Trivial };

    struct TrailEntry {
        bool is_cons;
        int index;
        Elem value;
        int count;
    };

    bool is_nonlinear(int mono) const
    {
        const int r = remaining_[static_cast<std::size_t>(mono)];
        return r >= 2 || (r == 1 && prog_.monos[static_cast<std::size_t>(mono)].last_exp >= 2);
    }

    void count_node()
    {
        if (++local_nodes_ >= 4096) {
            const std::uint64_t total = shared_nodes_.fetch_add(local_nodes_) + local_nodes_;
            local_nodes_ = 0;
            if (total > options_.node_budget)
                throw ResourceLimit("point count exceeded the node budget of " + std::to_string(options_.node_budget));
        }
    }

    bool assign(int d, Elem v)
    {
        bool ok = true;
        for (const auto& o : prog_.occ[static_cast<std::size_t>(d)]) {
            const auto mono = static_cast<std::size_t>(o.mono);
            if (remaining_[mono] == 0)
                continue;
            nonlinear_ -= is_nonlinear(o.mono);
            trail_.push_back({false, o.mono, partial_[mono], remaining_[mono]});
            if (v == 0) {
                partial_[mono] = 0;
                remaining_[mono] = 0;
            } else {
                partial_[mono] = F_.mul(partial_[mono], F_.pow(v, static_cast<std::uint64_t>(o.exp)));
                --remaining_[mono];
            }
            nonlinear_ += is_nonlinear(o.mono);
            if (remaining_[mono] != 0)
                continue;
            const auto c = static_cast<std::size_t>(prog_.monos[mono].cons);
            trail_.push_back({true, static_cast<int>(c), sum_[c], live_[c]});
            sum_[c] = F_.add(sum_[c], partial_[mono]);
            if (--live_[c] == 0 && sum_[c] != prog_.targets[c])
                ok = false;
        }
        return ok;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            const TrailEntry& t = trail_.back();
            const auto i = static_cast<std::size_t>(t.index);
            if (t.is_cons) {
                sum_[i] = t.value;
                live_[i] = t.count;
            } else {
                partial_[i] = t.value;
                remaining_[i] = t.count;
            }
            trail_.pop_back();
        }
    }

    Univariate solve_univariate(const Program::ConsGroup& group, std::vector<Elem>& out) const
    {
        // sum_e coef_e v^e = target - sum
        std::vector<std::pair<int, Elem>> coef;
        for (int mono : group.monos) {
            const auto m = static_cast<std::size_t>(mono);
            if (remaining_[m] != 1)
                continue;
            const int e = prog_.monos[m].last_exp;
            auto it = std::find_if(coef.begin(), coef.end(), [e](const auto& p) { return p.first == e; });
            if (it == coef.end())
                coef.emplace_back(e, partial_[m]);
            else
                it->second = F_.add(it->second, partial_[m]);
        }
        coef.erase(std::remove_if(coef.begin(), coef.end(), [](const auto& p) { return p.second == 0; }), coef.end());
        const auto c = static_cast<std::size_t>(group.cons);
        const Elem rhs = F_.sub(prog_.targets[c], sum_[c]);
        if (coef.empty())
            return rhs == 0 ? Univariate::Trivial : Univariate::Contradiction;
        if (coef.size() == 1) {
            F_.roots(F_.div(rhs, coef[0].second), static_cast<std::uint64_t>(coef[0].first), out);
            return out.empty() ? Univariate::Contradiction : Univariate::Solved;
        }
        for (Elem v = 0; v < F_.size(); ++v) {
            Elem s = 0;
            for (const auto& [e, a] : coef)
                s = F_.add(s, F_.mul(a, F_.pow(v, static_cast<std::uint64_t>(e))));
            if (s == rhs)
                out.push_back(v);
        }
        return out.empty() ? Univariate::Contradiction : Univariate::Solved;
    }

    void linear_finish(int d)
    {
        const int cols = prog_.positions - d;
        const auto width = static_cast<std::size_t>(cols) + 1;
        rows_.clear();
        for (std::size_t c = 0; c < live_.size(); ++c) {
            if (live_[c] == 0)
                continue;
            std::vector<Elem> row(width, 0);
            row[static_cast<std::size_t>(cols)] = F_.sub(prog_.targets[c], sum_[c]);
            rows_.push_back(std::move(row));
        }
        for (int p = d; p < prog_.positions; ++p)
            for (const auto& group : prog_.last_groups[static_cast<std::size_t>(p)]) {
                if (live_[static_cast<std::size_t>(group.cons)] == 0)
                    continue;
                // Row index of this constraint among the live ones.
                std::size_t r = 0;
                for (int c = 0; c < group.cons; ++c)
                    r += live_[static_cast<std::size_t>(c)] != 0;
                for (int mono : group.monos)
                    if (remaining_[static_cast<std::size_t>(mono)] == 1) {
                        auto& cell = rows_[r][static_cast<std::size_t>(p - d)];
                        cell = F_.add(cell, partial_[static_cast<std::size_t>(mono)]);
                    }
            }
        int rank = 0;
        for (int col = 0; col < cols && rank < static_cast<int>(rows_.size()); ++col) {
            std::size_t pivot = static_cast<std::size_t>(rank);
            while (pivot < rows_.size() && rows_[pivot][static_cast<std::size_t>(col)] == 0)
                ++pivot;
            if (pivot == rows_.size())
                continue;
            std::swap(rows_[pivot], rows_[static_cast<std::size_t>(rank)]);
            const auto& prow = rows_[static_cast<std::size_t>(rank)];
            const Elem inv = F_.inv(prow[static_cast<std::size_t>(col)]);
            for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows_.size(); ++r) {
                const Elem lead = rows_[r][static_cast<std::size_t>(col)];
                if (lead == 0)
                    continue;
                const Elem f = F_.mul(lead, inv);
                for (std::size_t k = static_cast<std::size_t>(col); k < width; ++k)
                    rows_[r][k] = F_.sub(rows_[r][k], F_.mul(f, prow[k]));
            }
            ++rank;
        }
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows_.size(); ++r)
            if (rows_[r][static_cast<std::size_t>(cols)] != 0)
                return;
        ++tally_[static_cast<std::size_t>(cols - rank)];
    }

    const Program& prog_;
    const FiniteField& F_;
    const CountOptions& options_;
    std::atomic<std::uint64_t>& shared_nodes_;
    std::uint64_t local_nodes_ = 0;

    std::vector<Elem> partial_;
    std::vector<int> remaining_;
    std::vector<Elem> sum_;
    std::vector<int> live_;
    int nonlinear_ = 0;
    std::vector<TrailEntry> trail_;
    std::vector<std::uint64_t> tally_;
    std::vector<std::vector<Elem>> rows_;
};

Integer power_of(std::uint32_t q, int e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(e));
    return r;
}

} // namespace

int absent_variable_count(const JetConstraintSystem& sys)
{
    std::vector<char> used(static_cast<std::size_t>(sys.num_vars()), 0);
    for (const auto& level : sys.levels)
        for (const auto& mono : level)
            if (mono.coeff != 0)
                for (const auto& [v, e] : mono.vars)
                    used[static_cast<std::size_t>(v)] = 1;
    int absent = 0;
    for (char u : used)
        absent += !u;
    return absent;
}

Integer count_points(const JetConstraintSystem& sys, const FiniteField& field, const CountOptions& options)
{
    const Program prog = compile(sys, field);
    if (prog.inconsistent)
        return 0;
    std::atomic<std::uint64_t> nodes{0};
    std::vector<std::uint64_t> tally(static_cast<std::size_t>(prog.positions) + 1, 0);

    Search root(prog, field, options, nodes);
    std::vector<Elem> first;
    const int threads = std::max(1, options.threads);
    if (prog.positions == 0 || threads == 1 || root.linear_ready()) {
        root.run(0);
        root.flush_nodes();
        tally = root.tally();
    } else if (prog.positions > 0 && root.candidates(0, first)) {
        // Split the first variable's values across workers; totals are summed
        // in a fixed order so the result does not depend on scheduling.
        std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(threads));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    Search worker(prog, field, options, nodes);
                    for (std::size_t i = static_cast<std::size_t>(t); i < first.size(); i += static_cast<std::size_t>(threads))
                        worker.descend(0, first[i]);
                    worker.flush_nodes();
                    partial[static_cast<std::size_t>(t)] = worker.tally();
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);
        for (const auto& part : partial)
            for (std::size_t k = 0; k < part.size(); ++k)
                tally[k] += part[k];
    }

    Integer total = 0;
    for (std::size_t k = 0; k < tally.size(); ++k)
        if (tally[k] != 0)
            total += Integer(static_cast<unsigned long>(tally[k])) * power_of(field.size(), static_cast<int>(k));
    return total * power_of(field.size(), prog.absent);
}

Integer count_points(const JetConstraintSystem& sys, std::uint32_t p, const CountOptions& options)
{
    return count_points(sys, *FiniteField::get(p, 1), options);
}

} // namespace motzeta
