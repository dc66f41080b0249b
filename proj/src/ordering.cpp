#include "lpdvfs/ordering.hpp"

#include "lpdvfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lpdvfs {

namespace {

constexpr double kBoundaryTolerance = 1e-12;
// Slack allowed on the capacity preconditions; matches the LP feasibility
// tolerance so solver output is always accepted.
constexpr double kCapacitySlack = 1e-9;

} // namespace

IntervalSchedule wrap_around(const IntervalWorkload& workload, int processors,
                             std::size_t interval_index) {
    const std::size_t tasks = workload.task_ids.size();
    double total = 0.0;
    for (std::size_t t = 0; t < tasks; ++t) {
        double per_task = 0.0;
        for (double w : workload.fractions[t]) per_task += w;
        if (per_task > 1.0 + kCapacitySlack) {
            std::ostringstream msg;
            msg << "task " << workload.task_ids[t] << " fraction total " << per_task << " > 1";
            throw CapacityExceededError(msg.str());
        }
        total += per_task;
    }
    if (total > static_cast<double>(processors) + kCapacitySlack) {
        std::ostringstream msg;
        msg << "total fraction " << total << " exceeds " << processors << " processors";
        throw CapacityExceededError(msg.str());
    }

    // The line position is tracked as (chunk, offset) so each processor's
    // fractions are computed from a clean zero rather than by subtracting
    // the chunk index from a running global sum.
    IntervalSchedule schedule;
    schedule.interval = interval_index;
    int chunk = 1;
    double offset = 0.0;
    for (std::size_t t = 0; t < tasks; ++t) {
        for (std::size_t q = 0; q < workload.fractions[t].size(); ++q) {
            double rem = workload.fractions[t][q];
            if (rem <= kFractionDropTolerance) continue;
            while (rem > kFractionDropTolerance) {
                if (chunk > processors) {
                    // only reachable through capacity slack; the sliver is
                    // at most kCapacitySlack wide
                    rem = 0.0;
                    break;
                }
                const double space = 1.0 - offset;
                const bool fits = rem <= space + kBoundaryTolerance;
                const double take = fits ? rem : space;
                Segment seg;
                seg.processor = chunk;
                seg.task = workload.task_ids[t];
                seg.level = q;
                seg.begin = offset;
                seg.end = std::min(offset + take, 1.0);
                if (1.0 - seg.end <= kBoundaryTolerance) seg.end = 1.0;
                schedule.segments.push_back(seg);
                if (fits) {
                    offset += take;
                    rem = 0.0;
                    if (1.0 - offset <= kBoundaryTolerance) {
                        ++chunk;
                        offset = 0.0;
                    }
                } else {
                    rem -= take;
                    ++chunk;
                    offset = 0.0;
                }
            }
        }
    }
    return schedule;
}

std::vector<Violation> validate_interval(const IntervalSchedule& schedule,
                                         const IntervalWorkload& workload, int processors) {
    std::vector<Violation> violations;
    const double tol = kBoundaryTolerance;

    auto describe = [](const Segment& s) {
        std::ostringstream out;
        out << "task " << s.task << " level " << s.level << " on processor " << s.processor
            << " [" << s.begin << ", " << s.end << "]";
        return out.str();
    };

    std::map<int, std::vector<Segment>> by_processor;
    std::map<int, std::vector<Segment>> by_task;
    for (const auto& seg : schedule.segments) {
        if (seg.begin < -tol || seg.end > 1.0 + tol || seg.begin > seg.end + tol) {
            violations.push_back({"segment-range", describe(seg)});
        }
        if (seg.processor < 1 || seg.processor > processors) {
            violations.push_back({"processor-range", describe(seg)});
        }
        by_processor[seg.processor].push_back(seg);
        by_task[seg.task].push_back(seg);
    }

    for (auto& [proc, segs] : by_processor) {
        std::sort(segs.begin(), segs.end(),
                  [](const Segment& a, const Segment& b) { return a.begin < b.begin; });
        for (std::size_t i = 1; i < segs.size(); ++i) {
            if (segs[i].begin < segs[i - 1].end - tol) {
                violations.push_back({"processor-overlap",
                                      describe(segs[i - 1]) + " overlaps " + describe(segs[i])});
            }
        }
    }

    for (auto& [task, segs] : by_task) {
        std::sort(segs.begin(), segs.end(),
                  [](const Segment& a, const Segment& b) { return a.begin < b.begin; });
        for (std::size_t i = 1; i < segs.size(); ++i) {
            if (segs[i].begin < segs[i - 1].end - tol) {
                violations.push_back({"parallel-self-execution",
                                      describe(segs[i - 1]) + " overlaps " + describe(segs[i])});
            }
        }
    }

    // Conservation: segment mass per (task, level) matches the fractions.
    std::map<std::pair<int, std::size_t>, double> mass;
    for (const auto& seg : schedule.segments) {
        mass[{seg.task, seg.level}] += seg.end - seg.begin;
    }
    for (std::size_t t = 0; t < workload.task_ids.size(); ++t) {
        for (std::size_t q = 0; q < workload.fractions[t].size(); ++q) {
            const double want = workload.fractions[t][q] > kFractionDropTolerance
                                    ? workload.fractions[t][q]
                                    : 0.0;
            double got = 0.0;
            if (auto it = mass.find({workload.task_ids[t], q}); it != mass.end()) {
                got = it->second;
                mass.erase(it);
            }
            if (std::abs(got - want) > tol) {
                std::ostringstream msg;
                msg << "task " << workload.task_ids[t] << " level " << q << ": scheduled " << got
                    << " of fraction " << want;
                violations.push_back({"conservation", msg.str()});
            }
        }
    }
    for (const auto& [key, got] : mass) {
        if (got > tol) {
            std::ostringstream msg;
            msg << "task " << key.first << " level " << key.second
                << ": scheduled " << got << " with no fraction";
            violations.push_back({"conservation", msg.str()});
        }
    }

    return violations;
}

IntervalWorkload plan_interval_workload(const WorkloadPlan& plan, std::size_t interval) {
    IntervalWorkload workload;
    workload.task_ids = plan.task_ids;
    workload.fractions = plan.fractions[interval];
    return workload;
}

std::vector<IntervalSchedule> order_plan(const WorkloadPlan& plan, int processors) {
    std::vector<IntervalSchedule> schedules;
    schedules.reserve(plan.grid.interval_count());
    for (std::size_t mu = 0; mu < plan.grid.interval_count(); ++mu) {
        schedules.push_back(wrap_around(plan_interval_workload(plan, mu), processors, mu));
    }
    return schedules;
}

} // namespace lpdvfs
