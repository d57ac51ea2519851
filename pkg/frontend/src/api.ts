// Thin client for the assessment service HTTP+JSON API. The UI touches the
// service only through this module; no direct file access anywhere.

import type { AssessmentRecord, NextResponse } from './types.js'

export class ApiError extends Error {
  status: number

  constructor(status: number, message: string) {
    super(message)
    this.status = status
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>

export class ApiClient {
  private baseUrl: string
  private fetchFn: FetchLike

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, '')
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init))
  }

  private async request(method: string, path: string, body?: unknown): Promise<Response> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    })
    if (!response.ok) {
      let message = `HTTP ${response.status}`
      try {
        const payload = await response.json()
        if (payload && typeof payload.error === 'string') message = payload.error
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(response.status, message)
    }
    return response
  }

  async nextItem(sessionId: string, annotatorId: string): Promise<NextResponse> {
    const response = await this.request(
      'GET',
      `/sessions/${encodeURIComponent(sessionId)}/next?annotator=${encodeURIComponent(annotatorId)}`,
    )
    return response.json() as Promise<NextResponse>
  }

  async submitRecord(sessionId: string, record: AssessmentRecord): Promise<void> {
    await this.request('POST', `/sessions/${encodeURIComponent(sessionId)}/records`, record)
  }

  async exportRecords(sessionId: string): Promise<AssessmentRecord[]> {
    const response = await this.request(
      'GET',
      `/sessions/${encodeURIComponent(sessionId)}/export`,
    )
    const text = await response.text()
    return text
      .split('\n')
      .filter((line) => line.trim().length > 0)
      .map((line) => JSON.parse(line) as AssessmentRecord)
  }
}
