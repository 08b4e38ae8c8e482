/** Thin typed client for the five validation-service endpoints. */

import type {
  FormatResponse,
  InferResponse,
  MatrixEntry,
  SourceFormat,
  ValidateResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok && response.status !== 422) {
      throw new ApiError(`${path} failed: ${response.status}`, response.status);
    }
    return (await response.json()) as T;
  }

  validate(source: SourceFormat, text: string): Promise<ValidateResponse> {
    return this.post<ValidateResponse>("/api/v1/validate", { source, text });
  }

  infer(src: string, dst: string): Promise<InferResponse> {
    return this.post<InferResponse>("/api/v1/infer", { src, dst });
  }

  async matrix(): Promise<MatrixEntry[]> {
    const response = await fetch(`${this.baseUrl}/api/v1/matrix`);
    if (!response.ok) {
      throw new ApiError(`matrix failed: ${response.status}`, response.status);
    }
    const body = (await response.json()) as { entries: MatrixEntry[] };
    return body.entries;
  }

  format(text: string): Promise<FormatResponse> {
    return this.post<FormatResponse>("/api/v1/format", { text });
  }

  async render(
    source: SourceFormat,
    text: string,
    format: "svg" | "dot",
    bm?: string,
  ): Promise<string> {
    const response = await fetch(`${this.baseUrl}/api/v1/render`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(bm ? { source, text, format, bm } : { source, text, format }),
    });
    if (!response.ok) {
      throw new ApiError(`render failed: ${response.status}`, response.status);
    }
    return response.text();
  }
}
