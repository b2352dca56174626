#pragma once

#include "epsum/coupled.hpp"
#include "epsum/hyper.hpp"

#include <functional>
#include <string>
#include <vector>

namespace epsum::fixtures {

// Single sum with Beta and Gamma factors and its expansions.
inline constexpr const char* kSummand =
    "(-1)^k*Exp[-3*ep*eg/2]*Gamma[-1-3*ep/2]*Beta[2+k,ep/2]*Beta[k-ep,-ep]*Beta[1-ep/2+k,1+ep/2]*Binomial[N,k]";
inline constexpr const char* kPoleBracket =
    "(2+3*k)*(-2+3*k+7*k^2+3*k^3)/(3*k^2*(1+k)^3) + 2*S[2](k)/(1+k) + z2/(2*(1+k))";

inline constexpr const char* kPoleOperator =
    "(16*N^3+144*N^2+413*N+384)*(N+1)^2*F(N) - (N+2)*(2*N+5)*(16*N^3+112*N^2+221*N+113)*F(N+1)"
    " + (N+3)^2*(16*N^3+96*N^2+173*N+99)*F(N+2)";
inline constexpr const char* kPoleRhs =
    "z2*(4*N^2+21*N+29)/2 + (-64*N^5-500*N^4-1133*N^3+203*N^2+3516*N+3090)/(3*(N+2)*(N+3))";
inline constexpr const char* kPoleClosedForm =
    "(1/12 - z2/8)*(1-4*N)/(N+1) + (-14*N-13)/(N+1)^2 + (4*N-1)*S[1](N)/(N+1) + (1-4*N)*S[1](N)^2/(6*(N+1))"
    " + (14*N+13)*S[1](N)/(3*(N+1)^2) + (175*N^2+334*N+155)/(12*(N+1)^3) + (1-4*N)*S[2](N)/(6*(N+1)) + z2/(8*(N+1))";
inline constexpr const char* kPoleConstants[2] = {"1/12 - z2/8", "1"};

inline constexpr const char* kExpansionOperator =
    "2*(N+1)^2*F(N) + (3*ep^2+3*ep*N+9*ep-4*N^2-12*N-8)*F(N+1) - (2*ep-N-1)*(ep+2*N+6)*F(N+2)";
inline constexpr const char* kExpansionRhs = "0*ep^-3 - 16/3*ep^-2 + 40/3*ep^-1 - (2*z2 - 68/3) + O[ep]^1";
inline constexpr const char* kExpansionIvs[2] = {
    "2/3*ep^-3 - 11/6*ep^-2 + (z2/4 + 79/24)*ep^-1 + O[ep]^0",
    "8/9*ep^-3 - 73/27*ep^-2 + (z2/3 + 1415/324)*ep^-1 + O[ep]^0",
};
inline constexpr const char* kExpansion =
    "4*N/(3*(N+1))*ep^-3 - (2*(2*N+1)/(3*(N+1))*S[1](N) + 2*N*(2*N+3)/(3*(N+1)^2))*ep^-2"
    " + ((1-4*N)/(6*(N+1))*S[1](N)^2 - N*(N^2-2)/(3*(N+1)^3) + (3*N+2)*(4*N+5)/(3*(N+1)^2)*S[1](N)"
    " + (1-4*N)/(6*(N+1))*S[2](N) + N*z2/(2*(N+1)))*ep^-1 + O[ep]^0";

// Three-loop ladder system in x and in N.
inline constexpr const char* kLadderUnknowns[3] = {"I1", "I2", "I3"};
inline constexpr const char* kLadderMatrix[3][3] = {
    {"-(-ep+x-1)/((x-1)*x)", "-2/((x-1)*x)", "0"},
    {"-ep*(3*ep+2)*(x-2)/(4*(x-1)*x)", "(-2+x+ep*(3*x-5))/(2*(x-1)*x)", "-(2*ep+x-ep*x)/(2*(x-1)*x)"},
    {"ep*(3*ep+2)/(4*(x-1))", "(2+ep-3*x-3*ep*x)/(2*(x-1)*x)", "-(ep+1)/(2*(x-1))"},
};
inline constexpr const char* kLadderInputs[3] = {
    "1/((x-1)*x)",
    "(ep*(50-14*x)+ep^2*(25-6*x)-8*(x-3))/(4*(5*ep+6)*(x-1)*x)",
    "(8*(x-3)+ep^2*(6*x-25)+2*ep*(7*x-25))/(4*(5*ep+6)*(x-1)*x)",
};
inline constexpr const char* kTranslatedFirstLine = "N*I1(N-1) - (ep + N + 1)*I1(N) + 2*I2(N) = B1(N)";

inline constexpr const char* kLadderEquations[3][2] = {
    {"N*I1(N-1) - (ep+N+1)*I1(N) + 2*I2(N)",
     "-4*(N+2)/(3*(N+1))*ep^-3 + (2*(2*N+1)/(3*(N+1))*S[1](N) - 2*(6*N^2+13*N+8)/(3*(N+1)^2))*ep^-2 + O[ep]^-1"},
    {"4*(ep-N)*I3(N) - 2*ep*(3*ep+2)*I1(N) + ep*(3*ep+2)*I1(N-1) - 2*(3*ep+1)*I2(N-1) + 2*(5*ep+2)*I2(N)"
     " - 2*(ep-2*N+1)*I3(N-1)",
     "-8/3*ep^-3 - (8/3*S[1](N) - 4)*ep^-2 - (4/3*S[1](N)^2 - 4*(N+1)/N*S[1](N) + 4/3*S[2](N) + z2 + 6)*ep^-1 + O[ep]^0"},
    {"2*(ep+2*N+2)*I2(N) - 2*(3*ep+2*N+1)*I2(N-1) + ep*(3*ep+2)*I1(N-1) - 2*(ep+1)*I3(N-1)",
     "8/3*ep^-3 + (8/3*S[1](N) - 4)*ep^-2 + (4/3*S[1](N)^2 - 4*(N+1)/N*S[1](N) + 4/3*S[2](N) + z2 + 6)*ep^-1 + O[ep]^0"},
};
inline constexpr const char* kScalarOperator =
    "-2*(N+1)*(N+2)*(ep+N+2)*I1(N) - (N+2)*(2*ep^2-5*ep*N-7*ep-6*N^2-28*N-32)*I1(N+1)"
    " + (ep^3+4*ep^2*N+14*ep^2-4*ep*N^2-13*ep*N-3*ep-6*N^3-50*N^2-136*N-120)*I1(N+2)"
    " - (ep-N-2)*(ep+N+4)*(ep+2*N+8)*I1(N+3)";
inline constexpr const char* kScalarRhs =
    "-4*(N+2)/(3*(N+3))*ep^-3 + 2*(4*N^4+35*N^3+101*N^2+105*N+25)/(3*(N+1)*(N+2)*(N+3)^2)*ep^-2 + O[ep]^-1";
inline constexpr const char* kLadderIvs[3] = {
    "5*ep^-3 - 163/12*ep^-2 + (15*z2/8 + 1223/48)*ep^-1 + O[ep]^0",
    "130/27*ep^-3 - 695/54*ep^-2 + (65*z2/36 + 46379/1944)*ep^-1 + O[ep]^0",
    "169/36*ep^-3 - 395/32*ep^-2 + (169*z2/96 + 470071/20736)*ep^-1 + O[ep]^0",
};
inline constexpr const char* kLadderI1 =
    "(4*(3*N^2+6*N+4)/(3*(N+1)^2) + 4*S[1](N)/(3*(N+1)))*ep^-3 + (-2*(20*N^3+58*N^2+57*N+22)/(3*(N+1)^3)"
    " - S[1](N)^2/(N+1) + 2*(N+2)*(2*N-1)*S[1](N)/(3*(N+1)^2) - S[2](N)/(N+1))*ep^-2 + O[ep]^-1";

HyperTerm summand();
SumExpression pole_bracket();
RecOperator pole_operator();
SumExpression pole_rhs();
SumExpression pole_closed_form();
RecOperator expansion_operator();
EpsSeries expansion_rhs();
std::vector<EpsSeries> expansion_ivs();
EpsSeries expansion();
/// Differential system with the input B1; rows two and three are the printed fragments.
CoupledSystem ladder_ode();
CoupledSystem ladder_recurrences();
RecOperator scalar_operator();
EpsSeries scalar_rhs();
std::vector<EpsSeries> ladder_ivs();
EpsSeries ladder_i1();
/// Dependency lists of I1..I15 whose blocks form the seven-cluster chain.
std::vector<std::vector<std::size_t>> cluster_dependencies();
std::vector<std::vector<std::size_t>> cluster_chain();

struct FixtureResult {
    std::string id;
    std::string topic;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Fixture {
    std::string id;
    /// "summation" or "coupled"
    std::string topic;
    std::function<FixtureResult()> run;
};

const std::vector<Fixture>& all_fixtures();
/// Runs the fixtures whose id or topic is listed (all when only is empty).
std::vector<FixtureResult> reproduce(const std::vector<std::string>& only = {});

}  // namespace epsum::fixtures
