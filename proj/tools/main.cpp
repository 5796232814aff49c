#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "checks.hpp"
#include "format.hpp"
#include "json.hpp"

using namespace vvmf;
using namespace vvmf::cli;
using nlohmann::json;

namespace {

enum Exit { ok = 0, verify_failed = 1, input = 2, precondition = 3 };

struct Config {
    std::string gram_path;
    long p = 2;
    std::vector<long> primes{2};
    std::vector<int> kl{0, 2};
    long bound = 12;
    int order = 6;
    int depth = 3;
    std::string format;
    bool floating = false;
    int precision = 6;
    std::string chi1 = "1 @1", chi2 = "1 @1";
    std::string normalization = "plain";
    bool has_depth = false;
    bool has_chi = false;
};

class Runner {
public:
    explicit Runner(const Config& c) : c_(c) {}

    int fqm() {
        FQM D = load();
        std::vector<std::string> q;
        for (long x = 0; x < D.order(); ++x) q.push_back(D.q(x).value().get_str());
        if (fmt("json") == "json") {
            json j{{"order", D.order()},
                   {"level", D.level()},
                   {"signature", D.signature()},
                   {"elementary_divisors", D.elementary_divisors()},
                   {"q_values", q}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "order\t" << D.order() << "\nlevel\t" << D.level() << "\nsignature\t" << D.signature()
                      << "\nelementary_divisors\t" << join(D.elementary_divisors()) << "\nq_values\t" << join(q)
                      << "\n";
        }
        return ok;
    }

    int weil() {
        FQM D = load();
        std::vector<std::pair<std::string, GroupRingOperator>> ops = {
            {"S", rho_S(D)}, {"T", rho_T(D)}, {"Z", rho_Z(D)}};
        const bool js = fmt("tsv") == "json";
        json j;
        for (const auto& [name, A] : ops) {
            json rows = json::array();
            for (long i = 0; i < A.dim(); ++i) {
                json row = json::array();
                for (long k = 0; k < A.dim(); ++k) {
                    if (js)
                        row.push_back(val(A.entry(i, k)));
                    else
                        std::cout << name << "\t" << i << "\t" << k << "\t" << val(A.entry(i, k)) << "\n";
                }
                rows.push_back(row);
            }
            j[name] = rows;
        }
        if (js) std::cout << j.dump(2) << "\n";
        return ok;
    }

    int theta() {
        print(theta_of(Rat(c_.bound)));
        return ok;
    }

    int hecke() {
        auto f = theta_of(Rat(c_.bound));
        if (c_.kl.size() != 2) throw input_error("--kl expects k,l");
        HeckeNormalization norm;
        if (c_.normalization == "plain")
            norm = HeckeNormalization::plain;
        else if (c_.normalization == "determinant")
            norm = HeckeNormalization::determinant;
        else
            throw input_error("--normalization must be plain or determinant");
        auto Tf = hecke_apply(f, {c_.p, c_.kl[0], c_.kl[1]}, norm);
        std::string lam;
        try {
            lam = val(eigenvalue_of(f, Tf));
        } catch (const not_an_eigenform&) {
        }
        if (fmt("tsv") == "json") {
            json j = expansion_json(Tf);
            j["eigenvalue"] = lam.empty() ? json(nullptr) : json(lam);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << expansion_tsv(Tf);
            std::cout << "# eigenvalue\t" << (lam.empty() ? "none (not proportional)" : lam) << "\n";
        }
        return ok;
    }

    int eigen() {
        auto e = eigendata();
        if (fmt("tsv") == "json") {
            json j = json::array();
            for (const auto& [p, v] : e.lambda) {
                json row = json::array();
                for (const auto& x : v) row.push_back(val(x));
                j.push_back({{"p", p}, {"lambda", row}, {"proportional", true}});
            }
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "# p\tn\tlambda_f(m(p^2n, 1))\n";
            for (const auto& [p, v] : e.lambda)
                for (std::size_t n = 0; n < v.size(); ++n) std::cout << p << "\t" << n << "\t" << val(v[n]) << "\n";
            for (const auto& kv : e.lambda) std::cout << "# p=" << kv.first << " proportional: yes\n";
        }
        return ok;
    }

    int satake_table() {
        FQM D = load();
        if (c_.kl.size() != 2) throw input_error("--kl expects k,l");
        auto L = LocalSetting::at(D, c_.p);
        auto T = HeckeElement::generator(L, c_.kl[0], c_.kl[1]);
        auto S = satake(T);
        std::cout << "# a\tb\tcoefficient\n";
        for (const auto& [ab, v] : S.values) std::cout << ab.first << "\t" << ab.second << "\t" << val(v) << "\n";
        if (c_.has_chi || c_.has_depth) {
            auto chi = character();
            std::cout << "# chi^(T)\t" << val(character_eval(chi, T)) << "\n";
            if (c_.has_depth)
                std::cout << "# zonal\t" << val(zonal_oracle(chi, c_.p, c_.kl[0], c_.kl[1], c_.depth)) << "\n";
        }
        return ok;
    }

    int lfactor() {
        FQM D = load();
        auto L = LocalSetting::at(D, c_.p);
        SatakeParams sp;
        if (c_.has_chi) {
            sp = SatakeParams::from_character(character(), L);
        } else {
            Config c = c_;
            c.primes = {c_.p};
            sp = satake_from_eigen(Runner(c).eigendata(), c_.p);
        }
        auto R = L_factor(sp, L);
        if (fmt("tsv") == "json") {
            json j{{"p", c_.p}, {"chi1chi2", val(sp.prod)}, {"e1", val(sp.e1())}, {"e2", val(sp.e2())}};
            j["num"] = poly(R.num());
            j["den"] = poly(R.den());
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "chi1chi2\t" << val(sp.prod) << "\ne1\t" << val(sp.e1()) << "\ne2\t" << val(sp.e2()) << "\n";
            std::cout << "num\t" << join(poly(R.num())) << "\nden\t" << join(poly(R.den())) << "\n";
        }
        return ok;
    }

    int zeta() {
        auto e = eigendata();
        const long bound = *std::max_element(c_.primes.begin(), c_.primes.end()) + 1;
        bool complete = true;
        for (long q = 2; q < bound; ++q) complete = complete && (!is_prime(q) || e.depth(q) >= 0);
        if (fmt("tsv") == "json") {
            json j;
            j["report"] = json::parse(lfun_report_json(e, c_.primes));
            for (long p : c_.primes) {
                j["local"][std::to_string(p)] = series(local_zeta(e, p, c_.order));
                j["standard"][std::to_string(p)] = series(standard_local_zeta(e, p, c_.order));
            }
            if (complete) j["global"] = global_json(e, bound);
            std::cout << j.dump(2) << "\n";
            return ok;
        }
        std::cout << "# p\tn\tlocal\tstandard\n";
        for (long p : c_.primes) {
            auto Z = local_zeta(e, p, c_.order), S = standard_local_zeta(e, p, c_.order);
            for (int n = 0; n <= c_.order; ++n)
                std::cout << p << "\t" << n << "\t" << val(Z.coeff(n)) << "\t" << val(S.coeff(n)) << "\n";
        }
        if (complete) {
            auto G = global_zeta(e, c_.order, bound);
            for (const auto& F : G.factors)
                std::cout << "# factor p=" << F.p << (F.dividing ? " dividing" : " coprime") << " chi=" << val(F.chi)
                          << (F.leading ? " leading=" + val(*F.leading) : "") << "\n";
        }
        return ok;
    }

    int verify() {
        FQM D = load();
        auto Dp = std::make_shared<const FQM>(D);
        auto lat = LatticeInput::from_gram(G_);
        std::mt19937 rng(1);
        int failed = 0;
        auto report = [&](const std::string& name, const checks::Outcome& r) {
            failed += !r.ok;
            std::cout << (r.ok ? "PASS" : "FAIL") << "\t" << name;
            if (!r.ok) std::cout << "\t" << r.detail;
            std::cout << std::endl;
        };
        auto skip = [](const std::string& name, const std::string& why) {
            std::cout << "SKIP\t" << name << "\t" << why << std::endl;
        };
        auto run = [&](const std::string& name, const std::function<checks::Outcome()>& f) {
            try {
                report(name, f());
            } catch (const std::domain_error&) {
                throw;
            } catch (const std::exception& x) {
                checks::Outcome r;
                r.fail(x.what());
                report(name, r);
            }
        };

        run("fqm", [&] {
            auto r = checks::fqm_invariants(D);
            r += checks::milgram(D);
            return r;
        });
        run("weil", [&] { return checks::weil_relations(D, rng, 20, 10); });
        for (long p : c_.primes) {
            const std::string tag = " p=" + std::to_string(p);
            run("padic" + tag, [&] {
                auto r = checks::padic_decompositions(p, 50, rng);
                r += checks::coset_sets(p, {{0, 2}, {1, 3}, {0, 4}});
                return r;
            });
            auto L = LocalSetting::at(D, p);
            if (L.regime == Regime::coprime) {
                run("sphalg" + tag, [&] {
                    auto r = checks::satake_homomorphism(L, 2);
                    std::vector<UnramifiedCharacter> chis;
                    for (int i = 0; i < 3; ++i) chis.push_back(checks::random_character(rng));
                    r += checks::series_identity(L, chis, c_.order);
                    return r;
                });
                run("lfun synthetic" + tag, [&] {
                    return checks::synthetic_round_trip(Dp, lat.rank / 2, p, std::max(c_.order, 6), rng);
                });
            } else {
                run("sphalg" + tag, [&] { return checks::satake_closed_form(L, 4); });
            }
        }

        if (!lat.positive_definite() || lat.rank % 2) {
            skip("hecke", "theta series needs a positive definite lattice of even rank");
            skip("lfun", "no theta series");
            return failed ? verify_failed : ok;
        }
        const int depth = std::max(3, (c_.order + 1) / 2);
        std::vector<long> good;
        for (long p : c_.primes)
            if (D.level() % p) good.push_back(p);
        long B = 12;
        for (long p : good) B = std::max(B, 4 * p * p);
        if (good.size() > 1) B = std::max(B, 4 * good[0] * good[0] * good[1] * good[1]);
        run("hecke", [&] { return checks::hecke_relations(theta_series(G_, Rat(B)), c_.primes); });

        for (long p : c_.primes) {
            const std::string tag = " p=" + std::to_string(p);
            const bool dividing = D.level() % p == 0;
            const int dp = dividing ? 2 : depth;
            std::optional<EigenData> e;
            try {
                e = collect_eigendata(theta_series(G_, checks::eigen_bound(p, dp)), {p}, dp);
            } catch (const not_an_eigenform&) {
                skip("lfun" + tag, "theta series is not an eigenform");
                continue;
            }
            if (dividing)
                run("lfun local zeta" + tag, [&] { return checks::dividing_local_zeta(*e, p, 2 * dp); });
            else
                run("lfun zeta-L" + tag, [&] { return checks::zeta_L(*e, p, std::min(c_.order, 2 * depth)); });
        }
        return failed ? verify_failed : ok;
    }

private:
    const Config& c_;
    IntMatrix G_;

    FQM load() {
        if (c_.gram_path.empty()) throw input_error("--gram is required");
        G_ = read_gram_file(c_.gram_path);
        return FQM::from_gram(G_);
    }

    std::string fmt(const std::string& dflt) const {
        std::string f = c_.format.empty() ? dflt : c_.format;
        if (f != "json" && f != "tsv") throw input_error("--format must be json or tsv");
        return f;
    }

    std::string val(const Cyclotomic& x) const {
        return format_value(x, c_.floating ? ValueMode::floating : ValueMode::exact, c_.precision);
    }

    template <class V>
    static std::string join(const V& v) {
        std::ostringstream os;
        bool first = true;
        for (const auto& x : v) {
            os << (first ? "" : ",") << x;
            first = false;
        }
        return os.str();
    }

    std::vector<std::string> poly(const Polynomial& P) const {
        std::vector<std::string> r;
        for (const auto& c : P) r.push_back(val(c));
        return r;
    }

    std::vector<std::string> series(const LaurentSeries& S) const {
        std::vector<std::string> r;
        for (int n = 0; n <= S.order(); ++n) r.push_back(val(S.coeff(n)));
        return r;
    }

    UnramifiedCharacter character() const {
        try {
            return {Cyclotomic::parse(c_.chi1), Cyclotomic::parse(c_.chi2)};
        } catch (const std::invalid_argument& x) {
            throw input_error(std::string("bad character value: ") + x.what());
        }
    }

    VVQExpansion theta_of(const Rat& bound) {
        load();
        auto lat = LatticeInput::from_gram(G_);
        if (!lat.positive_definite() || lat.rank % 2)
            throw std::domain_error("theta series needs a positive definite lattice of even rank");
        return theta_series(G_, bound);
    }

    EigenData eigendata() {
        EigenData e;
        for (long p : c_.primes) {
            auto d = collect_eigendata(theta_of(checks::eigen_bound(p, c_.depth)), {p}, c_.depth);
            e.form = d.form;
            e.weight = d.weight;
            e.set(p, d.lambda.at(p));
        }
        return e;
    }

    json expansion_json(const VVQExpansion& f) const {
        json j = json::parse(f.to_json());
        for (auto& c : j["coefficients"]) c["coefficient"] = val(Cyclotomic::parse(c["coefficient"].get<std::string>()));
        return j;
    }

    std::string expansion_tsv(const VVQExpansion& f) const {
        std::ostringstream os;
        for (const auto& [k, v] : f.coeffs())
            os << join(f.form().coords(k.first)) << "\t" << k.second.get_num().get_str() << "/"
               << k.second.get_den().get_str() << "\t" << val(v) << "\n";
        return os.str();
    }

    void print(const VVQExpansion& f) const {
        if (fmt("tsv") == "json")
            std::cout << expansion_json(f).dump(2) << "\n";
        else
            std::cout << expansion_tsv(f);
    }

    json global_json(const EigenData& e, long bound) const {
        auto G = global_zeta(e, c_.order, bound);
        json a = json::array();
        for (const auto& F : G.factors) {
            json f{{"p", F.p}, {"dividing", F.dividing}, {"chi", val(F.chi)}, {"local", series(F.local)}};
            if (F.leading) f["leading"] = val(*F.leading);
            a.push_back(f);
        }
        return {{"prime_bound", bound}, {"truncated", G.truncated}, {"factors", a}};
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vector-valued modular forms: Weil representations, Hecke operators, Satake data, L-factors"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* s) {
        s->add_option("--gram", c.gram_path, "JSON file {\"gram\": [[int]]}")->required();
        s->add_option("--format", c.format, "json or tsv");
        s->add_flag("--float", c.floating, "print complex approximations");
        s->add_option("--precision", c.precision, "digits in --float mode")->check(CLI::NonNegativeNumber);
    };
    auto prime = [&](CLI::App* s) { s->add_option("-p,--prime", c.p, "prime")->check(CLI::PositiveNumber); };
    auto primes = [&](CLI::App* s) { s->add_option("--primes", c.primes, "primes")->delimiter(','); };
    auto kl = [&](CLI::App* s) { s->add_option("--kl", c.kl, "k,l of m(p^-k, p^-l)")->delimiter(',')->expected(2); };
    auto chi = [&](CLI::App* s) {
        s->add_option("--chi1", c.chi1, "chi_1(p), exact string such as \"2 @1\"");
        s->add_option("--chi2", c.chi2, "chi_2(p)");
    };

    auto* s_fqm = app.add_subcommand("fqm", "discriminant form summary");
    common(s_fqm);
    auto* s_weil = app.add_subcommand("weil", "rho(S), rho(T), rho(Z)");
    common(s_weil);
    auto* s_theta = app.add_subcommand("theta", "theta series q-expansion");
    common(s_theta);
    s_theta->add_option("--bound", c.bound, "truncation bound")->check(CLI::NonNegativeNumber);
    auto* s_hecke = app.add_subcommand("hecke", "apply T(m(p^-k, p^-l)) to the theta series");
    common(s_hecke);
    prime(s_hecke);
    kl(s_hecke);
    s_hecke->add_option("--bound", c.bound, "truncation bound")->check(CLI::NonNegativeNumber);
    s_hecke->add_option("--normalization", c.normalization, "plain or determinant");
    auto* s_eigen = app.add_subcommand("eigen", "eigenvalues of the theta series");
    common(s_eigen);
    primes(s_eigen);
    s_eigen->add_option("--depth", c.depth, "largest n")->check(CLI::PositiveNumber);
    auto* s_satake = app.add_subcommand("satake", "Satake image of a generator");
    common(s_satake);
    prime(s_satake);
    kl(s_satake);
    chi(s_satake);
    auto* depth_opt = s_satake->add_option("--depth", c.depth, "zonal oracle depth m")->check(CLI::PositiveNumber);
    auto* s_lfactor = app.add_subcommand("lfactor", "local L-factor");
    common(s_lfactor);
    prime(s_lfactor);
    chi(s_lfactor);
    s_lfactor->add_option("--depth", c.depth, "eigendata depth")->check(CLI::PositiveNumber);
    auto* s_zeta = app.add_subcommand("zeta", "local and global zeta truncations");
    common(s_zeta);
    primes(s_zeta);
    s_zeta->add_option("--order", c.order, "series order")->check(CLI::NonNegativeNumber);
    s_zeta->add_option("--depth", c.depth, "eigendata depth")->check(CLI::PositiveNumber);
    auto* s_verify = app.add_subcommand("verify", "run the invariant suites");
    common(s_verify);
    primes(s_verify);
    s_verify->add_option("--order", c.order, "series order")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? ok : input;
    }
    for (auto* s : {s_satake, s_lfactor})
        if (s->parsed()) c.has_chi = s->count("--chi1") + s->count("--chi2") > 0;
    c.has_depth = depth_opt->count() > 0;
    for (long p : c.primes)
        if (!is_prime(p)) {
            std::cerr << "error: " << p << " is not prime\n";
            return input;
        }
    if (!is_prime(c.p)) {
        std::cerr << "error: " << c.p << " is not prime\n";
        return input;
    }
    if (s_zeta->parsed() && c.order > 2 * c.depth) c.depth = (c.order + 1) / 2;

    Runner r(c);
    try {
        if (s_fqm->parsed()) return r.fqm();
        if (s_weil->parsed()) return r.weil();
        if (s_theta->parsed()) return r.theta();
        if (s_hecke->parsed()) return r.hecke();
        if (s_eigen->parsed()) return r.eigen();
        if (s_satake->parsed()) return r.satake_table();
        if (s_lfactor->parsed()) return r.lfactor();
        if (s_zeta->parsed()) return r.zeta();
        if (s_verify->parsed()) return r.verify();
    } catch (const input_error& x) {
        std::cerr << "input error: " << x.what() << "\n";
        return input;
    } catch (const std::domain_error& x) {
        std::cerr << "precondition violated: " << x.what() << "\n";
        return precondition;
    } catch (const std::invalid_argument& x) {
        std::cerr << "input error: " << x.what() << "\n";
        return input;
    } catch (const std::out_of_range& x) {
        std::cerr << "input error: " << x.what() << "\n";
        return input;
    } catch (const std::exception& x) {
        std::cerr << "error: " << x.what() << "\n";
        return verify_failed;
    }
    return ok;
}
