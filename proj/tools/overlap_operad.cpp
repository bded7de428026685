#include "overlap/basis.hpp"
#include "overlap/forests.hpp"
#include "overlap/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>

using namespace overlap;
using nlohmann::json;

namespace {

json elementJson(const Element& el) {
    json terms = json::array();
    for (const auto& [m, c] : el.terms())
        terms.push_back({{"coeff", c.str()}, {"monomial", toString(m)}});
    auto deg = el.degree();
    return json{{"ambient", {{"d", el.ctx().d}, {"k", el.ctx().k}, {"n", el.ctx().n}}},
                {"degree", deg ? json(*deg) : json(nullptr)},
                {"terms", terms}};
}

void printElementText(const Element& el) {
    std::cout << el.str() << "\n";
    auto deg = el.degree();
    if (el.isZero())
        std::cout << "degree: -\n";
    else if (deg)
        std::cout << "degree: " << *deg << "\n";
    else
        std::cout << "degree: mixed\n";
}

std::vector<int> parseIntList(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(std::stoi(cur));
    if (out.empty())
        throw InputError("empty integer list");
    return out;
}

int printSuite(SuiteResult result) {
    std::sort(result.cases.begin(), result.cases.end(),
              [](const VerifyCase& a, const VerifyCase& b) { return a.id < b.id; });
    for (const auto& c : result.cases) {
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.id;
        if (!c.pass && !c.detail.empty())
            std::cout << "  :: " << c.detail;
        std::cout << "\n";
    }
    std::cout << result.name << ": " << (result.cases.size() - result.failCount()) << "/"
              << result.cases.size() << " passed\n";
    return result.allPass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic engine for the homology of non-k-overlapping discs"};
    app.require_subcommand(1);

    int d = 2, k = 3, n = 0;
    std::string expr, format = "text";

    auto addAmbient = [&](CLI::App* cmd, bool withExpr = true) {
        cmd->add_option("--d", d, "spatial dimension (>= 2)")->required();
        cmd->add_option("--k", k, "overlap bound (>= 2)")->required();
        cmd->add_option("--n", n, "arity")->required();
        if (withExpr)
            cmd->add_option("expr", expr, "element expression")->required();
        cmd->add_option("--format", format, "text|json");
    };

    auto* cmdParse = app.add_subcommand("parse", "parse and validate an expression");
    addAmbient(cmdParse);

    auto* cmdNormalize = app.add_subcommand("normalize", "normal form of an expression");
    addAmbient(cmdNormalize);

    auto* cmdDegree = app.add_subcommand("degree", "degree of the normalized element");
    addAmbient(cmdDegree);

    auto* cmdCompose = app.add_subcommand("compose", "filtered operadic composition a o_i b");
    int k1 = 3, n1 = 0, k2 = 3, n2 = 0, at = 1;
    std::string exprA, exprB;
    cmdCompose->add_option("--d", d, "spatial dimension")->required();
    cmdCompose->add_option("--k1", k1, "overlap bound of a")->required();
    cmdCompose->add_option("--n1", n1, "arity of a")->required();
    cmdCompose->add_option("--k2", k2, "overlap bound of b")->required();
    cmdCompose->add_option("--n2", n2, "arity of b")->required();
    cmdCompose->add_option("--at", at, "slot index i")->required();
    cmdCompose->add_option("exprA", exprA, "left operand")->required();
    cmdCompose->add_option("exprB", exprB, "right operand")->required();
    cmdCompose->add_option("--format", format, "text|json");

    auto* cmdVerify = app.add_subcommand("verify", "run a verification suite");
    std::string suite, dsText = "2,3", ksText = "3,4";
    int randomTrials = 200;
    unsigned seed = 20240915;
    cmdVerify->add_option("--suite", suite, "relations|composition|signs|confluence")
        ->required();
    cmdVerify->add_option("--d", dsText, "comma-separated dimensions");
    cmdVerify->add_option("--k", ksText, "comma-separated overlap bounds");
    cmdVerify->add_option("--n", n, "unused; accepted for interface stability");
    cmdVerify->add_option("--random", randomTrials, "trials for randomized suites");
    cmdVerify->add_option("--seed", seed, "seed for randomized suites");

    auto* cmdBasis = app.add_subcommand("basis", "canonical spanning monomials");
    long degreeWanted = -1;
    cmdBasis->add_option("--d", d, "spatial dimension")->required();
    cmdBasis->add_option("--k", k, "overlap bound")->required();
    cmdBasis->add_option("--n", n, "arity")->required();
    cmdBasis->add_option("--degree", degreeWanted, "restrict to one degree");
    cmdBasis->add_option("--format", format, "text|json");

    auto* cmdSigns = app.add_subcommand("signs", "sign ledger for the brace-in-brace theorem");
    cmdSigns->add_option("--k1", k1, "first overlap bound (>= 3)")->required();
    cmdSigns->add_option("--k2", k2, "second overlap bound (>= 3)")->required();
    cmdSigns->add_option("--d", d, "spatial dimension")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmdParse) {
            AmbientContext ctx(d, k, n);
            ExprPtr e = parse(expr, ctx);
            if (format == "json")
                std::cout << json{{"ambient", {{"d", d}, {"k", k}, {"n", n}}},
                                  {"expr", print(*e)}}
                                 .dump()
                          << "\n";
            else
                std::cout << print(*e) << "\n";
            return 0;
        }
        if (*cmdNormalize) {
            AmbientContext ctx(d, k, n);
            Element el = normalize(expr, ctx);
            if (format == "json")
                std::cout << elementJson(el).dump() << "\n";
            else
                printElementText(el);
            return 0;
        }
        if (*cmdDegree) {
            AmbientContext ctx(d, k, n);
            Element el = normalize(expr, ctx);
            auto deg = el.degree();
            if (el.isZero())
                std::cout << "-\n";
            else if (deg)
                std::cout << *deg << "\n";
            else
                std::cout << "mixed\n";
            return 0;
        }
        if (*cmdCompose) {
            Element a = normalize(exprA, AmbientContext(d, k1, n1));
            Element b = normalize(exprB, AmbientContext(d, k2, n2));
            Element raw = composeRaw(a, at, b);
            Element result = normalizeElement(raw);
            if (format == "json") {
                json out = elementJson(result);
                out["composite"] = raw.strPlain();
                out["classA"] = toString(classify(a));
                out["classB"] = toString(classify(b));
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "class a: " << toString(classify(a))
                          << ", class b: " << toString(classify(b)) << "\n";
                std::cout << "composite: " << raw.strPlain() << "\n";
                printElementText(result);
            }
            return 0;
        }
        if (*cmdVerify) {
            std::vector<int> ds = parseIntList(dsText);
            std::vector<int> ks = parseIntList(ksText);
            if (suite == "relations")
                return printSuite(relationsSuite(ds, ks));
            if (suite == "composition")
                return printSuite(compositionSuite(ds));
            if (suite == "signs")
                return printSuite(signsSuite(ks, ds));
            if (suite == "confluence")
                return printSuite(confluenceSuite(ds, ks, randomTrials, seed));
            throw InputError("unknown suite: " + suite);
        }
        if (*cmdBasis) {
            AmbientContext ctx(d, k, n);
            auto byDegree = enumerateSpanningSet(ctx);
            if (format == "json") {
                json out;
                out["ambient"] = {{"d", d}, {"k", k}, {"n", n}};
                json degs = json::array();
                for (const auto& [deg, monos] : byDegree) {
                    if (degreeWanted >= 0 && deg != degreeWanted)
                        continue;
                    json list = json::array();
                    for (const Monomial& m : monos)
                        list.push_back(toString(m));
                    degs.push_back({{"degree", deg}, {"count", monos.size()},
                                    {"monomials", list}});
                }
                out["degrees"] = degs;
                std::cout << out.dump() << "\n";
            } else {
                std::size_t total = 0;
                for (const auto& [deg, monos] : byDegree) {
                    if (degreeWanted >= 0 && deg != degreeWanted)
                        continue;
                    std::cout << "degree " << deg << ":\n";
                    for (const Monomial& m : monos)
                        std::cout << "  " << toString(m) << "\n";
                    total += monos.size();
                }
                std::cout << "count: " << total << "\n";
            }
            return 0;
        }
        if (*cmdSigns) {
            TheoremSignCheck check = verifyTheoremSign(k1, k2, d);
            for (const auto& step : check.ledger.steps)
                std::cout << (step.sign > 0 ? "+1  " : "-1  ") << step.description << "\n";
            std::cout << "right side total: " << check.rightSide << "\n";
            std::cout << "product-of-trees side: " << check.leftSide << "\n";
            std::cout << "expected (-1)^((k1+k2-1)d-1): " << check.expected << "\n";
            std::cout << (check.rightSide == check.expected &&
                                  check.leftSide == check.expected
                              ? "consistent\n"
                              : "INCONSISTENT\n");
            return check.rightSide == check.expected && check.leftSide == check.expected ? 0
                                                                                         : 1;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
