__app_name__ = "friction-pinn"
__version__ = "0.1.0"
__author__ = "Bartek Celary"
__email__ = "bcelary@gmail.com"
__description__ = (
    "Physics-informed neural network and LCP time-stepping solvers "
    "for friction-induced nonsmooth dynamics"
)
__url__ = "https://github.com/bcelary/friction-pinn"
