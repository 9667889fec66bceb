#include "bg/encodings.hpp"
#include "bg/error.hpp"
#include "bg/gadgets.hpp"
#include "bg/game.hpp"
#include "bg/reductions.hpp"
#include "bg/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace bg;

namespace {

enum Exit { ok = 0, no = 1, usage = 2, capped = 3 };

struct Common {
    std::string format = "json";
    std::uint64_t cap_cells = default_cap;
    std::uint64_t cap_deviations = std::uint64_t{1} << 22;
    std::uint64_t cap_supports = std::uint64_t{1} << 20;
    std::uint64_t sample = 0;
    std::uint64_t seed = 1;

    SolverOptions options() const {
        SolverOptions o;
        o.cap_cells = cap_cells;
        o.cap_deviations = cap_deviations;
        o.cap_supports = cap_supports;
        if (sample) o.sample = sample;
        o.seed = seed;
        return o;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    bool normal = false;
    BooleanGame game;
    NormalForm nf;
};

bool looks_normal_form(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto p = line.find_first_not_of(" \t");
        if (p != std::string::npos && line.compare(p, 10, "strategies") == 0) return true;
    }
    return false;
}

Loaded load_game(const std::string& path) {
    std::string text = read_file(path);
    Loaded l;
    l.normal = looks_normal_form(text);
    if (l.normal)
        l.nf = parse_normal_form(text);
    else
        l.game = parse_game(text);
    return l;
}

NormalForm as_normal_form(const Loaded& l, const Common& c) {
    return l.normal ? l.nf : to_normal_form(l.game, c.cap_cells);
}

json rationals(const std::vector<Rational>& v) {
    json j = json::array();
    for (const auto& r : v) j.push_back(to_string(r));
    return j;
}

std::vector<Rational> parse_rationals(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

Weights parse_weights(const std::string& text) {
    Weights w;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) w.push_back(parse_rationals(part));
    return w;
}

Assignment parse_assignment(const std::string& text) {
    Assignment a;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw input_error("assignments are name=0|1 pairs");
        std::string name = item.substr(0, eq), val = item.substr(eq + 1);
        if (val != "0" && val != "1") throw input_error("assignment values must be 0 or 1");
        a[name] = val == "1";
    }
    return a;
}

json witness_json(const Loaded& l, const NormalForm& nf, const EquilibriumWitness& w) {
    if (!l.normal) return json::parse(render_profile(to_profile(nf, w.weights)));
    json j = json::array();
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
        json pl = json::object();
        for (std::size_t s = 0; s < w.weights[i].size(); ++s)
            if (w.weights[i][s] != 0) pl[nf.labels[i][s]] = to_string(w.weights[i][s]);
        j.push_back(pl);
    }
    return j;
}

void emit(const json& j, const Common& c) {
    if (c.format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        if (v.is_string()) {
            const std::string& s = v.get_ref<const std::string&>();
            if (s.find('\n') != std::string::npos)
                std::cout << k << ":\n" << s << (s.back() == '\n' ? "" : "\n");
            else
                std::cout << k << ": " << s << "\n";
        } else {
            std::cout << k << ": " << v.dump() << "\n";
        }
    }
}

int decide(json j, bool yes, const Common& c) {
    j["answer"] = yes ? "yes" : "no";
    if (!j.contains("mode")) j["mode"] = "exact";
    emit(j, c);
    return yes ? ok : no;
}

std::vector<Symbol> word_of(const std::string& w) { return parse_word(w); }

json var_index_json(const ReductionOutput& ro) {
    json j = json::object();
    for (const auto& [k, v] : ro.var_index) j[k] = v;
    return j;
}

void write_artifact(const std::string& dir, const std::string& name, const std::string& content) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir + "/" + name);
    if (!out) throw input_error("cannot write " + dir + "/" + name);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean games toolkit: equilibria, gadgets, encodings and hardness constructions"};
    app.require_subcommand(1);
    Common c;
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--cap-cells", c.cap_cells, "Largest normal-form expansion (cells)");
    app.add_option("--cap-deviations", c.cap_deviations, "Largest exhaustive deviation sweep per player");
    app.add_option("--cap-supports", c.cap_supports, "Largest number of support pairs to enumerate");
    app.add_option("--sample", c.sample, "Random deviations per player once a sweep exceeds the cap");
    app.add_option("--seed", c.seed, "Seed for sampled sweeps");
    app.fallthrough();

    std::string game_path, assign, profile_path, weights, values, phi, mode = "exists";
    std::string machine_path, input, out_dir, kind, ns = "g";
    std::uint64_t bound = 0;
    int width = 1, m_size = 2;
    bool emit_witness = false, fast = false;
    std::string value_text, left_text, right_text;
    std::string p_name = "p", q_name = "q", r_name = "r";
    std::vector<std::string> card_vars;
    int parametric = 0, split = 0;

    std::function<int()> action;
    auto with_game = [&](CLI::App* s) { s->add_option("--game", game_path, "Game file (.bg or normal form)")->required(); };

    auto* check = app.add_subcommand("check", "Parse and validate a game file");
    with_game(check);
    check->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            json j;
            j["kind"] = l.normal ? "normal-form" : "boolean";
            j["players"] = l.normal ? l.nf.players() : l.game.players();
            if (!l.normal) {
                json counts = json::array();
                for (const auto& v : l.game.vars) counts.push_back(v.size());
                j["vars"] = counts;
            }
            return decide(j, true, c);
        };
    });

    auto* eval = app.add_subcommand("eval", "Utilities of a pure assignment or expected utilities of a profile");
    with_game(eval);
    eval->add_option("--assign", assign, "Pure assignment name=0|1,...; unlisted variables are false");
    eval->add_option("--profile", profile_path, "Profile JSON");
    eval->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            if (l.normal) throw input_error("eval works on Boolean games");
            json j;
            std::vector<Rational> u;
            if (!profile_path.empty()) {
                MixedProfile p = parse_profile(l.game, read_file(profile_path));
                for (std::size_t i = 0; i < l.game.players(); ++i) u.push_back(expected_utility(l.game, p, i));
            } else {
                Assignment a = parse_assignment(assign);
                auto all = l.game.all_vars();
                for (const auto& [k, v] : a)
                    if (std::find(all.begin(), all.end(), k) == all.end()) throw input_error("unknown variable " + k);
                for (const auto& v : all) a.emplace(v, false);
                for (std::size_t i = 0; i < l.game.players(); ++i) u.push_back(utility_pure(l.game, a, i));
            }
            j["payoffs"] = rationals(u);
            emit(j, c);
            return int(ok);
        };
    });

    auto* nform = app.add_subcommand("normal-form", "Expand a Boolean game into normal form");
    with_game(nform);
    nform->callback([&] {
        action = [&] {
            NormalForm nf = as_normal_form(load_game(game_path), c);
            if (c.format == "text") {
                std::cout << render_normal_form(nf);
                return int(ok);
            }
            json j;
            j["labels"] = nf.labels;
            json pay = json::array();
            for (const auto& p : nf.payoffs) pay.push_back(rationals(p));
            j["payoffs"] = pay;
            j["normal_form"] = render_normal_form(nf);
            emit(j, c);
            return int(ok);
        };
    });

    auto* value = app.add_subcommand("value", "Value of a two-player constant-sum game (exact LP)");
    with_game(value);
    value->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            ZeroSumResult r = l.normal ? zero_sum_value(l.nf) : zero_sum_value(l.game, c.cap_cells);
            json j;
            j["value"] = to_string(r.value);
            j["maxmin"] = rationals(r.maxmin);
            j["minmax"] = rationals(r.minmax);
            emit(j, c);
            return int(ok);
        };
    });

    auto* nash = app.add_subcommand("nash", "Equilibrium questions on two-player games");
    nash->require_subcommand(1);
    auto nash_verb = [&](const std::string& name, const std::string& help) {
        auto* s = nash->add_subcommand(name, help);
        with_game(s);
        return s;
    };

    auto* find = nash_verb("find", "Find one equilibrium (support enumeration)");
    find->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            NormalForm nf = as_normal_form(l, c);
            auto w = find_nash(nf, c.options());
            json j;
            if (w) {
                j["witness"] = witness_json(l, nf, *w);
                j["payoffs"] = rationals(w->payoffs);
            }
            return decide(j, bool(w), c);
        };
    });

    auto* unique = nash_verb("unique", "UniqueNash: is there exactly one equilibrium?");
    unique->callback([&] {
        action = [&] { return decide(json::object(), unique_nash(as_normal_form(load_game(game_path), c), c.options()), c); };
    });

    auto* guarantee = nash_verb("guarantee", "ExistsGuaranteeNash: an equilibrium paying at least v");
    guarantee->add_option("--v", values, "Payoff lower bounds, comma separated")->required();
    guarantee->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            NormalForm nf = as_normal_form(l, c);
            auto w = exists_guarantee_nash(nf, parse_rationals(values), c.options());
            json j;
            if (w) {
                j["witness"] = witness_json(l, nf, *w);
                j["payoffs"] = rationals(w->payoffs);
            }
            return decide(j, bool(w), c);
        };
    });

    auto* fguarantee = nash_verb("forall-guarantee", "ForallGuaranteeNash: every equilibrium pays at least v");
    fguarantee->add_option("--v", values, "Payoff lower bounds, comma separated")->required();
    fguarantee->callback([&] {
        action = [&] {
            NormalForm nf = as_normal_form(load_game(game_path), c);
            return decide(json::object(), forall_guarantee_nash(nf, parse_rationals(values), c.options()), c);
        };
    });

    auto* sat = nash_verb("sat", "NashSat: does phi hold with probability 1 in some/every equilibrium?");
    sat->add_option("--phi", phi, "Formula over the game's variables")->required();
    sat->add_option("--mode", mode, "Quantifier")->check(CLI::IsMember({"exists", "forall"}));
    sat->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            if (l.normal) throw input_error("nash sat works on Boolean games");
            bool r = nash_sat(l.game, parse_formula(phi), mode == "exists" ? SatMode::exists : SatMode::forall, c.options());
            json j;
            j["quantifier"] = mode;
            return decide(j, r, c);
        };
    });

    auto* is = nash_verb("is", "IsNash: is the given profile an equilibrium?");
    is->add_option("--profile", profile_path, "Profile JSON (Boolean games)");
    is->add_option("--weights", weights, "Weights per player, e.g. 1/2,1/2;1,0 (normal form)");
    is->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            json j;
            if (l.normal) {
                if (weights.empty()) throw input_error("normal-form games take --weights");
                j["mode"] = "exact";
                return decide(j, is_nash(l.nf, parse_weights(weights)), c);
            }
            if (profile_path.empty()) throw input_error("Boolean games take --profile");
            MixedProfile p = parse_profile(l.game, read_file(profile_path));
            NashCheck r = check_nash(l.game, p, c.options());
            j["mode"] = r.sampled ? "sampled" : "exact";
            j["checked"] = r.checked;
            j["payoffs"] = json::array();
            for (std::size_t i = 0; i < l.game.players(); ++i) j["payoffs"].push_back(to_string(expected_utility(l.game, p, i)));
            if (r.improvement) {
                json dev = json::object();
                for (const auto& [k, v] : r.improvement->second) dev[k] = v;
                j["improvement"] = {{"player", r.improvement->first + 1}, {"assign", dev}};
            }
            return decide(j, r.holds, c);
        };
    });

    auto* pure = nash_verb("pure", "List pure-strategy equilibria");
    pure->callback([&] {
        action = [&] {
            Loaded l = load_game(game_path);
            json list = json::array();
            if (l.normal) {
                for (const auto& e : pure_equilibria(l.nf)) {
                    json cell = json::array();
                    for (std::size_t i = 0; i < e.size(); ++i) cell.push_back(l.nf.labels[i][e[i]]);
                    list.push_back(cell);
                }
            } else {
                for (const auto& a : pure_equilibria(l.game, c.cap_cells)) {
                    json x = json::object();
                    for (const auto& [k, v] : a) x[k] = v;
                    list.push_back(x);
                }
            }
            json j;
            j["equilibria"] = list;
            j["count"] = list.size();
            return decide(j, !list.empty(), c);
        };
    });

    auto* irr = nash_verb("irrational", "IrrationalNash: is there an equilibrium with an irrational weight?");
    irr->add_flag("--fast", fast, "Use the zero-sum LP uniqueness test");
    irr->callback([&] {
        action = [&] {
            NormalForm nf = as_normal_form(load_game(game_path), c);
            return decide(json::object(), irrational_nash(nf, fast, c.options()), c);
        };
    });

    auto* gadget = app.add_subcommand("gadget", "Fixed-value gadget games and their algebra");
    gadget->require_subcommand(1);
    auto* gbuild = gadget->add_subcommand("build", "Emit a gadget game with its roles and equilibrium");
    gbuild->add_option("--value", value_text, "Value a/b in [0,1]");
    gbuild->add_option("--parametric", parametric, "Width n of the parametric game instead");
    gbuild->add_option("--split", split, "Width n of the split-opponent parametric game instead");
    gbuild->add_option("--ns", ns, "Variable namespace");
    gbuild->callback([&] {
        action = [&] {
            GadgetBundle b;
            if (parametric)
                b = parametric_value_game(ns, parametric);
            else if (split)
                b = split_opponent_game(ns, split);
            else if (!value_text.empty())
                b = fixed_value_game(parse_rational(value_text), ns);
            else
                throw input_error("gadget build needs --value, --parametric or --split");
            json j;
            j["game"] = render_game(b.game);
            j["roles"] = json::parse(role_vars_json(b));
            if (!parametric && !split) j["value"] = to_string(b.value);
            if (b.equilibrium) j["equilibrium"] = json::parse(render_profile(*b.equilibrium));
            j["unique"] = b.unique;
            emit(j, c);
            return int(ok);
        };
    });

    auto* gvalue = gadget->add_subcommand("value", "Build a gadget and confirm its value by LP");
    gvalue->add_option("--value", value_text, "Value a/b in [0,1]")->required();
    gvalue->callback([&] {
        action = [&] {
            GadgetBundle b = fixed_value_game(parse_rational(value_text), ns);
            ZeroSumResult r = zero_sum_value(b.game, c.cap_cells);
            json j;
            j["value"] = to_string(r.value);
            j["expected"] = to_string(b.value);
            return decide(j, r.value == b.value, c);
        };
    });

    auto* gcombine = gadget->add_subcommand("combine", "Sum, product or complement of gadget games");
    gcombine->add_option("--kind", kind, "sum, product or complement")
        ->required()
        ->check(CLI::IsMember({"sum", "product", "complement"}));
    gcombine->add_option("--left", left_text, "Value of the first gadget")->required();
    gcombine->add_option("--right", right_text, "Value of the second gadget");
    gcombine->callback([&] {
        action = [&] {
            GadgetBundle a = fixed_value_game(parse_rational(left_text), "a");
            std::optional<GadgetBundle> b;
            if (!right_text.empty()) b = fixed_value_game(parse_rational(right_text), "b");
            Combine k = kind == "sum" ? Combine::sum : kind == "product" ? Combine::product : Combine::complement;
            if (k != Combine::complement && !b) throw input_error("sum and product need --right");
            GadgetBundle out = combine_games(k, a, b ? &*b : nullptr, "c");
            ZeroSumResult r = zero_sum_value(out.game, c.cap_cells);
            json j;
            j["game"] = render_game(out.game);
            j["value"] = to_string(r.value);
            j["expected"] = to_string(out.value);
            return decide(j, r.value == out.value, c);
        };
    });

    auto* encode = app.add_subcommand("encode", "Emit a bit-level encoding formula");
    encode->require_subcommand(1);
    for (const char* name : {"equal", "succ", "less", "lesseq", "add", "sub", "square", "oneof", "noneof"}) {
        auto* s = encode->add_subcommand(name, std::string("Emit the ") + name + " encoding");
        std::string verb = name;
        if (verb == "oneof" || verb == "noneof") {
            s->add_option("--vars", card_vars, "Variables")->required()->delimiter(',');
        } else {
            s->add_option("--width", width, verb == "square" ? "Width k of R" : "Bit width");
            s->add_option("--p", p_name, "Prefix of the first number");
            s->add_option("--q", q_name, "Prefix of the second number");
            s->add_option("--r", r_name, "Prefix of the third number");
        }
        s->callback([&, verb] {
            action = [&, verb] {
                if (width < 1 || width > 32) throw input_error("width must be in 1..32");
                Formula f;
                BitSeq p = bits(p_name, width), q = bits(q_name, width), r = bits(r_name, width);
                if (verb == "equal") f = equal(p, q);
                else if (verb == "succ") f = succ(p, q);
                else if (verb == "less") f = less(p, q);
                else if (verb == "lesseq") f = less_eq(p, q);
                else if (verb == "add") f = add(p, q, r);
                else if (verb == "sub") f = sub(p, q, r);
                else if (verb == "oneof") f = build_cardinality(Cardinality::one_of, card_vars);
                else if (verb == "noneof") f = build_cardinality(Cardinality::none_of, card_vars);
                else {
                    int k = width;
                    std::vector<BitSeq> summands, partial;
                    for (int j = 0; j < k; ++j) summands.push_back(bits("S" + std::to_string(j + 1) + ".", 2 * k));
                    for (int j = 0; j <= k; ++j) partial.push_back(bits("P" + std::to_string(j) + ".", 2 * k));
                    f = build_square(bits("R", k), bits("Rsq", 2 * k), summands, partial);
                }
                json j;
                j["formula"] = render_formula(f);
                j["size"] = size(f);
                emit(j, c);
                return int(ok);
            };
        });
    }

    auto* reduce = app.add_subcommand("reduce", "Hardness constructions from machines and games");
    reduce->require_subcommand(1);
    auto machine_opts = [&](CLI::App* s) {
        s->add_option("--machine", machine_path, "Machine JSON")->required();
        s->add_option("--input", input, "Input word over {0,1}");
        s->add_option("--bound", bound, "Step bound K")->required();
        s->add_option("--out-dir", out_dir, "Also write game.bg, var_index.json (and witness.json) here");
    };
    auto reduction_json = [&](const ReductionOutput& ro) {
        json j;
        j["game"] = render_game(ro.game);
        j["var_index"] = var_index_json(ro);
        j["payoff"] = rationals(ro.payoff);
        j["v2"] = to_string(ro.payoff[1]);
        j["k"] = ro.spec.k;
        j["vars"] = {ro.game.vars[0].size(), ro.game.vars[1].size()};
        write_artifact(out_dir, "game.bg", render_game(ro.game));
        write_artifact(out_dir, "var_index.json", var_index_json(ro).dump(2) + "\n");
        return j;
    };

    auto* nexptm = reduce->add_subcommand("nexptm", "Guarantee game whose equilibria certify an accepting run");
    machine_opts(nexptm);
    nexptm->add_flag("--emit-witness", emit_witness, "Simulate the machine and emit the witness profile");
    nexptm->callback([&] {
        action = [&] {
            TuringMachine m = parse_machine(read_file(machine_path));
            ReductionOutput ro = build_guarantee_game(m, word_of(input), bound);
            json j = reduction_json(ro);
            if (!emit_witness) {
                emit(j, c);
                return int(ok);
            }
            auto t = simulate_tm(m, ro.input, ro.spec.W, ro.spec.W, bound - 1);
            if (t) {
                MixedProfile p = witness_profile(ro, *t);
                j["witness"] = json::parse(render_profile(p));
                j["witness_v2"] = to_string(expected_utility(ro.game, p, 1));
                write_artifact(out_dir, "witness.json", render_profile(p) + "\n");
            }
            return decide(j, bool(t), c);
        };
    });

    auto* fnexptm = reduce->add_subcommand("forall-nexptm", "Universal variant: player 2 names an illegal square");
    machine_opts(fnexptm);
    fnexptm->callback([&] {
        action = [&] {
            TuringMachine m = parse_machine(read_file(machine_path));
            ReductionOutput ro = build_forall_guarantee_game(m, word_of(input), bound);
            json j = reduction_json(ro);
            j["delta"] = to_string(forall_delta(ro.spec.k));
            emit(j, c);
            return int(ok);
        };
    });

    auto* transform = reduce->add_subcommand("transform", "Game transformations between equilibrium problems");
    transform->add_option("--kind", kind, "Transformation")
        ->required()
        ->check(CLI::IsMember({"unique-nash", "forall-nash-sat", "irrational", "exists-nash-sat", "duplicate"}));
    transform->add_option("--game", game_path, "Input game (unique-nash, forall-nash-sat, irrational, duplicate)");
    transform->add_option("--v", values, "Payoff pair or single value");
    transform->add_option("--machine", machine_path, "Machine JSON (exists-nash-sat)");
    transform->add_option("--input", input, "Input word (exists-nash-sat)");
    transform->add_option("--bound", bound, "Step bound K (exists-nash-sat)");
    transform->add_option("--ns", ns, "Namespace for fresh variables");
    transform->callback([&] {
        action = [&] {
            json j;
            if (kind == "exists-nash-sat") {
                if (machine_path.empty() || bound == 0) throw input_error("exists-nash-sat needs --machine and --bound");
                WrappedGuarantee w = transform_exists_nash_sat(parse_machine(read_file(machine_path)), word_of(input), bound);
                j["game"] = render_game(w.game);
                j["phi"] = render_formula(w.phi);
                emit(j, c);
                return int(ok);
            }
            if (game_path.empty()) throw input_error("this transform needs --game");
            Loaded l = load_game(game_path);
            if (kind == "duplicate") {
                NormalForm out = duplicate_construction(as_normal_form(l, c), parse_rational(values));
                j["normal_form"] = render_normal_form(out);
                emit(j, c);
                return int(ok);
            }
            if (l.normal) throw input_error("Boolean transforms need a Boolean game");
            TransformKind k = kind == "unique-nash"       ? TransformKind::unique_nash
                              : kind == "forall-nash-sat" ? TransformKind::forall_nash_sat
                                                          : TransformKind::irrational;
            Transformed t = transform_game(k, l.game, parse_rationals(values), ns);
            j["game"] = render_game(t.game);
            if (t.phi) j["phi"] = render_formula(*t.phi);
            emit(j, c);
            return int(ok);
        };
    });

    auto* verify = app.add_subcommand("verify", "Desk-scale checks of the constructions");
    verify->require_subcommand(1);
    auto* vwitness = verify->add_subcommand("witness", "Check the witness profile of the guarantee game");
    machine_opts(vwitness);
    vwitness->callback([&] {
        action = [&] {
            TuringMachine m = parse_machine(read_file(machine_path));
            ReductionOutput ro = build_guarantee_game(m, word_of(input), bound);
            auto t = simulate_tm(m, ro.input, ro.spec.W, ro.spec.W, bound - 1);
            json j;
            j["v2"] = to_string(ro.payoff[1]);
            if (!t) {
                j["reason"] = "no accepting run within the bound";
                return decide(j, false, c);
            }
            MixedProfile p = witness_profile(ro, *t);
            Rational u2 = expected_utility(ro.game, p, 1);
            SolverOptions o = c.options();
            if (!o.sample) o.sample = 100000;
            NashCheck one = check_deviations(ro.game, p, 0, o);
            NashCheck two = check_deviations(ro.game, p, 1, o);
            j["witness_v2"] = to_string(u2);
            j["player1"] = {{"mode", one.sampled ? "sampled" : "exact"}, {"checked", one.checked[0]}, {"holds", one.holds}};
            j["player2"] = {{"mode", two.sampled ? "sampled" : "exact"}, {"checked", two.checked[1]}, {"holds", two.holds}};
            j["mode"] = one.sampled || two.sampled ? "sampled" : "exact";
            return decide(j, u2 == ro.payoff[1] && one.holds && two.holds, c);
        };
    });

    auto* vsquares = verify->add_subcommand("squares", "Admissible squares per rule, checked against the oracle");
    machine_opts(vsquares);
    vsquares->callback([&] {
        action = [&] {
            TuringMachine m = parse_machine(read_file(machine_path));
            auto w = word_of(input);
            TableSpec spec = table_spec(bound);
            bool all = true;
            json rules = json::array();
            for (const auto& rs : admissible_squares(m, w, bound)) {
                bool sound = true;
                for (const auto& cl : rs.classes)
                    for (const auto& pat : cl.patterns) {
                        Square s;
                        s.cells = pat;
                        s.tape = cl.representative;
                        if (!rule_consistent(s, m, spec.W)) sound = false;
                    }
                all = all && sound && rs.size() <= 891;
                rules.push_back({{"rule", describe_rule(m, rs.rule)}, {"patterns", rs.size()}, {"sound", sound}});
            }
            json j;
            j["rules"] = rules;
            return decide(j, all, c);
        };
    });

    auto* vcover = verify->add_subcommand("cover-matrix", "Nonsingularity of the cover system (exact determinant)");
    vcover->add_option("--m", m_size, "Table side m")->required();
    vcover->callback([&] {
        action = [&] {
            Integer d = determinant(cover_matrix(m_size));
            json j;
            j["determinant"] = d.get_str();
            return decide(j, d != 0, c);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }
    try {
        return action ? action() : int(usage);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return capped;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
}
