#include "qrep/quadrature.hpp"

#include "qrep/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>
#include <string>

namespace qrep {

namespace {

double trampoline(double x, void* params) { return (*static_cast<const std::function<double(double)>*>(params))(x); }

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

void disable_gsl_abort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

template <class Call>
double run(const std::function<double(double)>& f, const QuadOptions& opt, Call call) {
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(opt.limit));
    gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
    double result = 0, err = 0;
    const int status = call(&gf, ws.get(), &result, &err);
    // Roundoff warnings at the requested tolerance still leave a usable estimate.
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw NumericalError(std::string("quadrature failed: ") + gsl_strerror(status) +
                             " (estimate " + std::to_string(result) + ", error " + std::to_string(err) + ")");
    }
    return result;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt) {
    return run(f, opt, [&](gsl_function* gf, gsl_integration_workspace* ws, double* r, double* e) {
        return gsl_integration_qag(gf, a, b, opt.epsabs, opt.epsrel, opt.limit, GSL_INTEG_GAUSS41, ws, r, e);
    });
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                       const QuadOptions& opt) {
    const double re = integrate([&](double x) { return f(x).real(); }, a, b, opt);
    const double im = integrate([&](double x) { return f(x).imag(); }, a, b, opt);
    return {re, im};
}

double integrate_real_line(const std::function<double(double)>& f, const QuadOptions& opt) {
    return run(f, opt, [&](gsl_function* gf, gsl_integration_workspace* ws, double* r, double* e) {
        return gsl_integration_qagi(gf, opt.epsabs, opt.epsrel, opt.limit, ws, r, e);
    });
}

}  // namespace qrep
