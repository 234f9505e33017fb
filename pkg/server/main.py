"""
FastAPI Server for post-SIC NOMA analysis
Exact post-SIC noise/fading statistics, outage, ergodic capacity and Monte Carlo checks
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from config.settings import DEFAULT_MC_WORKERS, QUAD_TOL, SERVER_HOST, SERVER_PORT, configure_logging
from routes.analysis_routes import router as analysis_router
from routes.simulation_routes import router as simulation_router
from routes.reproduce_routes import router as reproduce_router

# Initialize FastAPI app
app = FastAPI(title="NOMA post-SIC API")

# CORS Configuration
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Register routers
app.include_router(analysis_router)
app.include_router(simulation_router)
app.include_router(reproduce_router)


@app.get("/api/health")
async def health_check():
    """Health check endpoint"""
    return {
        "status": "ok",
        "services": {
            "analysis": "enabled",
            "simulation": f"{DEFAULT_MC_WORKERS} workers",
            "quadrature_tol": QUAD_TOL,
        }
    }


def serve(host: str = SERVER_HOST, port: int = SERVER_PORT) -> None:
    import uvicorn

    print(f"""
╔════════════════════════════════════════════════════════╗
║            NOMA post-SIC API Server Running            ║
╚════════════════════════════════════════════════════════╝

  Port: {port}

  Services:
  - Analysis (post-SIC 잡음/페이딩 통계, outage, ergodic capacity)
  - Simulation (Monte Carlo 링크 시뮬레이션)
  - Reproduction (표/그림 재현, 검증 스위트)

  Available endpoints:
  ✅ GET  /api/health

  📐 Analysis:
  - POST /api/analysis/scenario         (파생 파라미터)
  - POST /api/analysis/constellation    (중첩 BPSK 성상점)
  - POST /api/analysis/branch-stats     (SIC 성공/실패 분기 통계)
  - POST /api/analysis/outage           (정확/legacy outage)
  - POST /api/analysis/capacity         (정확/근사/legacy EC)
  - POST /api/analysis/qpsk             (QPSK E|W|², var[W])
  - POST /api/analysis/pdf              (PDF 곡선 데이터)
  - POST /api/analysis/sweep/outage     (outage 스윕)
  - POST /api/analysis/sweep/capacity   (capacity 스윕)

  🎲 Simulation:
  - POST /api/simulation/outage
  - POST /api/simulation/capacity
  - POST /api/simulation/branch-stats
  - POST /api/simulation/qpsk

  📊 Reproduction:
  - GET  /api/reproduce/targets
  - POST /api/reproduce/{{target}}     (table2, table3, fig6 ~ fig12)
  - POST /api/validate                 (fast | full)

  Ready to serve! 🚀
  """)

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    configure_logging()
    serve()
