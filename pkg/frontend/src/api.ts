// Thin typed client over the prediction service's JSON endpoints.

import {
  ApiError,
  type ApiErrorBody,
  type CatalogEntry,
  type Layout,
  type PredictResponse,
  type SimulateResponse,
} from "./types.js";

async function parseError(resp: Response): Promise<never> {
  let body: ApiErrorBody;
  try {
    body = (await resp.json()) as ApiErrorBody;
  } catch {
    body = { code: "http_error", message: `HTTP ${resp.status}` };
  }
  throw new ApiError(resp.status, body);
}

export class ServiceClient {
  constructor(
    private base: string,
    private fetcher: typeof fetch = fetch,
  ) {}

  async predict(layout: Layout): Promise<PredictResponse> {
    const resp = await this.fetcher(`${this.base}/api/predict`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(layout),
    });
    if (!resp.ok) {
      await parseError(resp);
    }
    return (await resp.json()) as PredictResponse;
  }

  async simulate(layout: Layout, paths: number, seed: number): Promise<SimulateResponse> {
    const resp = await this.fetcher(`${this.base}/api/simulate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ layout, paths, seed }),
    });
    if (!resp.ok) {
      await parseError(resp);
    }
    return (await resp.json()) as SimulateResponse;
  }

  async catalog(): Promise<Map<string, CatalogEntry>> {
    const resp = await this.fetcher(`${this.base}/api/catalog`);
    if (!resp.ok) {
      await parseError(resp);
    }
    const entries = (await resp.json()) as CatalogEntry[];
    return new Map(entries.map((e) => [e.kind, e]));
  }

  async healthz(): Promise<{ status: string; model_version: string | null }> {
    const resp = await this.fetcher(`${this.base}/healthz`);
    if (!resp.ok) {
      await parseError(resp);
    }
    return (await resp.json()) as { status: string; model_version: string | null };
  }
}
