#include "egolink/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "egolink/rng.hpp"
#include "egolink/text.hpp"

namespace egolink {

namespace {

constexpr std::int64_t kDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Activity window archetypes for circle-distinct profiles.
enum class Archetype { whole_window, weekday_day, weekend_evening };

struct IntervalSampler {
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;  // absolute [from, to)
    std::vector<std::int64_t> cumulative;                          // cumulative lengths
    std::int64_t total = 0;

    void add(std::int64_t from, std::int64_t to) {
        if (from >= to) return;
        intervals.emplace_back(from, to);
        total += to - from;
        cumulative.push_back(total);
    }

    std::int64_t sample(Rng& rng) const {
        const std::int64_t r = static_cast<std::int64_t>(
            rng.uniform_below(static_cast<std::uint64_t>(total)));
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        const std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
        const std::int64_t before = idx == 0 ? 0 : cumulative[idx - 1];
        return intervals[idx].first + (r - before);
    }
};

IntervalSampler build_sampler(Archetype arch, const TimeWindow& window, std::int64_t tz_offset) {
    IntervalSampler s;
    if (arch == Archetype::whole_window) {
        s.add(window.start, window.end);
        return s;
    }
    const std::int64_t local_start = window.start + tz_offset;
    const std::int64_t local_end = window.end + tz_offset;
    const std::int64_t first_day = floor_div(local_start, kDay);
    const std::int64_t last_day = floor_div(local_end - 1, kDay);
    for (std::int64_t day = first_day; day <= last_day; ++day) {
        const int weekday = static_cast<int>(((day % 7) + 7 + 3) % 7);  // 0 = Monday
        const std::int64_t base = day * kDay;
        std::vector<std::pair<std::int64_t, std::int64_t>> local;
        if (arch == Archetype::weekday_day) {
            if (weekday < 5) local.emplace_back(8 * 3600, 18 * 3600);
        } else {  // weekend_evening
            if (weekday >= 5) {
                local.emplace_back(0, kDay);
            } else {
                local.emplace_back(18 * 3600, kDay);
            }
        }
        for (const auto& [from, to] : local) {
            const std::int64_t abs_from = std::max(base + from, local_start) - tz_offset;
            const std::int64_t abs_to = std::min(base + to, local_end) - tz_offset;
            s.add(abs_from, abs_to);
        }
    }
    return s;
}

struct LinkEvents {
    NodeId u{};
    NodeId v{};
    std::vector<InteractionEvent> events;
    std::int64_t emitted = 0;  // alternates call/text directions
};

}  // namespace

void SynthConfig::validate() const {
    if (degree_counts.empty()) throw UsageError("synth: no degree classes configured");
    for (const auto& [k, n] : degree_counts) {
        if (k < 2) throw UsageError("synth: ego degree must be >= 2");
        if (n < 0) throw UsageError("synth: negative ego count");
        if (circles_per_ego > k) {
            throw UsageError("synth: circles_per_ego exceeds degree " + std::to_string(k));
        }
    }
    if (circles_per_ego < 1) throw UsageError("synth: circles_per_ego must be >= 1");
    for (const double p : {p_in, p_out, cascade_prob, text_fraction}) {
        if (p < 0.0 || p > 1.0) throw UsageError("synth: probabilities must lie in [0,1]");
    }
    if (base_rate_per_day <= 0.0) throw UsageError("synth: base_rate_per_day must be > 0");
    if (cascade_window <= 0) throw UsageError("synth: cascade_window must be > 0");
    if (ego_rate_sigma < 0.0) throw UsageError("synth: ego_rate_sigma must be >= 0");
    if (window.span() < 2 * kDay) throw UsageError("synth: observation window shorter than 2 days");
    if (profiles == Profiles::circle_distinct) {
        for (const Archetype a : {Archetype::weekday_day, Archetype::weekend_evening}) {
            if (build_sampler(a, window, calendar.tz_offset_seconds).total <= 0) {
                throw UsageError("synth: window too short for circle-distinct profiles");
            }
        }
    }
}

SynthOutput generate(const SynthConfig& config) {
    config.validate();

    SynthOutput out;
    const double days = static_cast<double>(config.window.span()) / static_cast<double>(kDay);
    const IntervalSampler uniform_sampler =
        build_sampler(Archetype::whole_window, config.window, config.calendar.tz_offset_seconds);
    const IntervalSampler weekday_sampler =
        build_sampler(Archetype::weekday_day, config.window, config.calendar.tz_offset_seconds);
    const IntervalSampler weekend_sampler =
        build_sampler(Archetype::weekend_evening, config.window, config.calendar.tz_offset_seconds);

    const auto circle_sampler = [&](int circle) -> const IntervalSampler& {
        if (config.profiles == SynthConfig::Profiles::uniform) return uniform_sampler;
        return circle % 2 == 0 ? weekday_sampler : weekend_sampler;
    };

    NodeId next_id = 1;
    std::uint64_t block = 0;
    for (const auto& [degree, count] : config.degree_counts) {
        for (int e = 0; e < count; ++e, ++block) {
            Rng rng(derive_seed(config.seed, block));
            const NodeId ego = next_id++;
            std::vector<NodeId> neighbors(static_cast<std::size_t>(degree));
            for (auto& id : neighbors) id = next_id++;

            // Contiguous, near-equal circles.
            const auto circle_of = [&](std::size_t idx) {
                return static_cast<int>(idx * static_cast<std::size_t>(config.circles_per_ego) /
                                        neighbors.size());
            };
            std::vector<std::vector<std::size_t>> circle_members(
                static_cast<std::size_t>(config.circles_per_ego));
            for (std::size_t idx = 0; idx < neighbors.size(); ++idx) {
                circle_members[static_cast<std::size_t>(circle_of(idx))].push_back(idx);
            }

            const double ego_mult =
                config.ego_rate_sigma > 0.0 ? rng.lognormal(0.0, config.ego_rate_sigma) : 1.0;

            const auto draw_kind = [&]() {
                return rng.bernoulli(config.text_fraction) ? Kind::text : Kind::call;
            };
            const auto draw_duration = [&]() {
                const double d =
                    rng.lognormal(config.duration_log_mean, config.duration_log_sigma);
                return std::max<std::int64_t>(1, std::llround(d));
            };

            // Ego-neighbor legs: base events, then cascades onto same-circle legs.
            std::vector<LinkEvents> legs(neighbors.size());
            for (std::size_t idx = 0; idx < neighbors.size(); ++idx) {
                legs[idx].u = ego;
                legs[idx].v = neighbors[idx];
                const auto& sampler = circle_sampler(circle_of(idx));
                const std::int64_t n_events =
                    rng.poisson(config.base_rate_per_day * days * ego_mult);
                for (std::int64_t ev = 0; ev < n_events; ++ev) {
                    const std::int64_t t = sampler.sample(rng);
                    const Kind kind = draw_kind();
                    legs[idx].events.push_back(
                        {kind, 0, 0, t, kind == Kind::call ? draw_duration() : 0});
                }
            }
            for (std::size_t idx = 0; idx < neighbors.size(); ++idx) {
                const auto& members = circle_members[static_cast<std::size_t>(circle_of(idx))];
                if (members.size() < 2) continue;
                const std::size_t n_base = legs[idx].events.size();
                for (std::size_t ev = 0; ev < n_base; ++ev) {
                    if (!rng.bernoulli(config.cascade_prob)) continue;
                    // Uniform other leg of the same circle.
                    std::size_t pick = static_cast<std::size_t>(
                        rng.uniform_below(static_cast<std::uint64_t>(members.size() - 1)));
                    std::size_t target = members[pick];
                    if (target == idx) target = members.back();
                    const std::int64_t offset = static_cast<std::int64_t>(
                        rng.uniform_below(static_cast<std::uint64_t>(config.cascade_window)));
                    const std::int64_t t = legs[idx].events[ev].timestamp + offset;
                    if (!config.window.contains(t)) continue;
                    const Kind kind = draw_kind();
                    legs[target].events.push_back(
                        {kind, 0, 0, t, kind == Kind::call ? draw_duration() : 0});
                }
            }

            // Planted neighbor-neighbor links; their events make them part of
            // the observed network.
            std::vector<LinkEvents> nn_links;
            for (std::size_t a = 0; a + 1 < neighbors.size(); ++a) {
                for (std::size_t b = a + 1; b < neighbors.size(); ++b) {
                    const bool same = circle_of(a) == circle_of(b);
                    if (!rng.bernoulli(same ? config.p_in : config.p_out)) continue;
                    LinkEvents link;
                    link.u = neighbors[a];
                    link.v = neighbors[b];
                    const auto& sampler =
                        same ? circle_sampler(circle_of(a)) : uniform_sampler;
                    const std::int64_t n_events = rng.poisson(config.base_rate_per_day * days);
                    for (std::int64_t ev = 0; ev < n_events; ++ev) {
                        const std::int64_t t = sampler.sample(rng);
                        const Kind kind = draw_kind();
                        link.events.push_back(
                            {kind, 0, 0, t, kind == Kind::call ? draw_duration() : 0});
                    }
                    out.truth.push_back({ego, link.u, link.v});
                    nn_links.push_back(std::move(link));
                }
            }

            // Assemble the block: assign directions (alternating per link),
            // guarantee every link survives preprocessing.
            std::vector<InteractionEvent> block_events;
            const auto flush_link = [&](LinkEvents& link) {
                if (link.events.empty()) {
                    // A link must carry at least one interaction to exist.
                    link.events.push_back({Kind::text, 0, 0, uniform_sampler.sample(rng), 0});
                }
                std::int64_t calls = 0;
                for (const auto& ev : link.events) {
                    if (ev.kind == Kind::call) ++calls;
                }
                if (calls == 1) {
                    // Reciprocate the lone call so the bidirectional filter
                    // keeps the pair.
                    const auto lone =
                        std::find_if(link.events.begin(), link.events.end(),
                                     [](const auto& ev) { return ev.kind == Kind::call; });
                    std::int64_t t = lone->timestamp + 60;
                    if (!config.window.contains(t)) t = lone->timestamp - 60;
                    link.events.push_back({Kind::call, 0, 0, t, draw_duration()});
                    calls = 2;
                }
                std::sort(link.events.begin(), link.events.end(),
                          [](const auto& a, const auto& b) {
                              return std::tie(a.timestamp, a.kind, a.duration) <
                                     std::tie(b.timestamp, b.kind, b.duration);
                          });
                std::int64_t call_seen = 0, text_seen = 0;
                for (auto& ev : link.events) {
                    auto& seen = ev.kind == Kind::call ? call_seen : text_seen;
                    const bool forward = (seen++ % 2) == 0;
                    ev.source = forward ? link.u : link.v;
                    ev.destination = forward ? link.v : link.u;
                    block_events.push_back(ev);
                }
            };
            for (auto& leg : legs) flush_link(leg);
            for (auto& link : nn_links) flush_link(link);

            std::sort(block_events.begin(), block_events.end(),
                      [](const auto& a, const auto& b) {
                          return std::tie(a.timestamp, a.kind, a.source, a.destination,
                                          a.duration) < std::tie(b.timestamp, b.kind, b.source,
                                                                 b.destination, b.duration);
                      });
            out.events.insert(out.events.end(), block_events.begin(), block_events.end());
        }
    }
    std::sort(out.truth.begin(), out.truth.end());
    return out;
}

void write_truth(std::ostream& out, std::span<const TruthLink> truth) {
    out << "ego,i,j\n";
    for (const auto& t : truth) out << t.ego << ',' << t.i << ',' << t.j << '\n';
}

std::vector<TruthLink> read_truth(std::istream& in) {
    std::vector<TruthLink> out;
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        const auto fields = split_csv(stripped);
        if (fields.size() != 3) throw DataError("bad truth row at line " + std::to_string(line_no));
        const auto ego = parse_int(fields[0]);
        const auto i = parse_int(fields[1]);
        const auto j = parse_int(fields[2]);
        if (!ego || !i || !j) throw DataError("bad truth row at line " + std::to_string(line_no));
        out.push_back({*ego, *i, *j});
    }
    return out;
}

void write_synth_manifest(std::ostream& out, const SynthConfig& config) {
    out << "# synth reproducibility manifest\n";
    std::string degrees;
    for (const auto& [k, n] : config.degree_counts) {
        if (!degrees.empty()) degrees += ',';
        degrees += std::to_string(k) + ':' + std::to_string(n);
    }
    out << "degrees=" << degrees << '\n';
    out << "circles=" << config.circles_per_ego << '\n';
    out << "p_in=" << format_double(config.p_in) << '\n';
    out << "p_out=" << format_double(config.p_out) << '\n';
    out << "base_rate=" << format_double(config.base_rate_per_day) << '\n';
    out << "cascade_prob=" << format_double(config.cascade_prob) << '\n';
    out << "cascade_window=" << config.cascade_window << '\n';
    out << "profiles="
        << (config.profiles == SynthConfig::Profiles::uniform ? "uniform" : "circle-distinct")
        << '\n';
    out << "dur_mu=" << format_double(config.duration_log_mean) << '\n';
    out << "dur_sigma=" << format_double(config.duration_log_sigma) << '\n';
    out << "text_fraction=" << format_double(config.text_fraction) << '\n';
    out << "ego_rate_sigma=" << format_double(config.ego_rate_sigma) << '\n';
    out << "seed=" << config.seed << '\n';
    out << "window_start=" << config.window.start << '\n';
    out << "window_end=" << config.window.end << '\n';
    out << "tz_offset=" << config.calendar.tz_offset_seconds << '\n';
}

}  // namespace egolink
